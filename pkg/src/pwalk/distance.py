"""Graph distance to the base triangle P = {0, 1, 1+zeta} and the g1/g2/g3 tables.

The distance is taken in the undirected lattice graph whose neighbours are
``+-1, +-zeta, +-zeta^2``.  In ``(a, b)`` coordinates the step ``-zeta^2`` is
``(1, 1)``, so the hop count to the origin is ``max(|a|, |b|)`` when a and b
share a sign and ``|a| + |b|`` otherwise.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .eisenstein import NEIGHBOURS, ONE, ZETA, ZETA2, Eisenstein
from .regions import P_POINTS, RegionLabel, classify
from .report import VerificationReport, timed


class BoundExceeded(ValueError):
    pass


def hex_dist(d: Eisenstein) -> int:
    a, b = d.a, d.b
    if a * b >= 0:
        return max(abs(a), abs(b))
    return abs(a) + abs(b)


def _hex(a: int, b: int) -> int:
    if (a >= 0) == (b >= 0) or a == 0 or b == 0:
        return max(abs(a), abs(b))
    return abs(a) + abs(b)


def norm_ab(a: int, b: int) -> int:
    return min(_hex(a, b), _hex(a - 1, b), _hex(a - 1, b - 1))


def norm(z: Eisenstein) -> int:
    """Hop count from z to the nearest point of P."""
    return norm_ab(z.a, z.b)


@lru_cache(maxsize=8)
def _bfs_table(radius_bound: int) -> dict[tuple[int, int], int]:
    dist = {(p.a, p.b): 0 for p in P_POINTS}
    frontier = deque(dist)
    steps = [(n.a, n.b) for n in NEIGHBOURS]
    while frontier:
        a, b = frontier.popleft()
        d = dist[(a, b)]
        if d == radius_bound:
            continue
        for da, db in steps:
            q = (a + da, b + db)
            if q not in dist:
                dist[q] = d + 1
                frontier.append(q)
    return dist


def norm_bfs(z: Eisenstein, radius_bound: int) -> int:
    """Breadth-first search from the three P points, stopping at ``radius_bound`` hops."""
    try:
        return _bfs_table(radius_bound)[(z.a, z.b)]
    except KeyError:
        raise BoundExceeded(f"{z!r} is farther than {radius_bound} hops from P") from None


def g(z: Eisenstein, norm_fn=norm) -> tuple[Eisenstein, Eisenstein, int]:
    """The (g1, g2, g3) combinations of the norm at the three forward neighbours of z."""
    n1 = norm_fn(z + ONE)
    nz = norm_fn(z + ZETA)
    nz2 = norm_fn(z + ZETA2)
    g1 = n1 * ONE + nz * ZETA2 + nz2 * ZETA
    g2 = n1 * ONE + nz * ZETA + nz2 * ZETA2
    g3 = n1 + nz + nz2 - 3 * norm_fn(z)
    return g1, g2, g3


R = RegionLabel

# Reference values of (g1, g2, g3) per region, one column per label.
TABLE: dict[RegionLabel, tuple[Eisenstein, Eisenstein, int]] = {
    R.A1: (ONE - ZETA2, ONE - ZETA, 0),
    R.A2: (ZETA - ZETA2, ZETA2 - ZETA, 0),
    R.A3: (ZETA - ONE, ZETA2 - ONE, 0),
    R.A4: (ZETA2 - ONE, ZETA - ONE, 0),
    R.A5: (ZETA2 - ZETA, ZETA - ZETA2, 0),
    R.A6: (ONE - ZETA, ONE - ZETA2, 0),
    R.B1: (ONE, ONE, 1),
    R.B2: (ZETA2, ZETA, 1),
    R.B3: (ZETA, ZETA2, 1),
    R.B4: (-2 * ONE, -2 * ONE, 1),
    R.B5: (-2 * ZETA2, -2 * ZETA, 1),
    R.B6: (-2 * ZETA, -2 * ZETA2, 1),
    R.P0: (-ONE, -ONE, 2),
    R.P1: (-ZETA2, -ZETA, 2),
    R.P1Z: (-ZETA, -ZETA2, 2),
}


def ball(radius: int):
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            yield Eisenstein(a, b)


def verify_tables(radius: int, *, table=None, use_bfs: bool = False) -> VerificationReport:
    """Compare g(z) against the reference table on every point with |a|, |b| <= radius."""
    if radius < 3:
        raise ValueError("radius must be at least 3")
    table = TABLE if table is None else table
    if use_bfs:
        bound = 3 * radius + 4
        norm_fn = lambda z: norm_bfs(z, bound)  # noqa: E731
    else:
        norm_fn = norm
    rep = VerificationReport("tables")
    with timed(rep):
        for z in ball(radius):
            label = classify(z)
            got = g(z, norm_fn)
            rep.checked += 1
            if got != table[label]:
                rep.add({"point": z, "region": label}, table[label], got)
    rep.details["radius"] = radius
    rep.details["norm"] = "bfs" if use_bfs else "closed-form"
    return rep
