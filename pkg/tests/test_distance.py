from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pwalk.distance import TABLE, BoundExceeded, g, hex_dist, norm, norm_bfs, verify_tables
from pwalk.eisenstein import NEIGHBOURS, ONE, ZERO, ZETA, ZETA2, Eisenstein
from pwalk.regions import RegionLabel as R, classify


def bfs_from_origin(bound):
    dist = {(0, 0): 0}
    q = deque([(0, 0)])
    while q:
        p = q.popleft()
        if dist[p] == bound:
            continue
        for n in NEIGHBOURS:
            nxt = (p[0] + n.a, p[1] + n.b)
            if nxt not in dist:
                dist[nxt] = dist[p] + 1
                q.append(nxt)
    return dist


ORIGIN_BFS = bfs_from_origin(70)


def test_hex_dist_examples():
    assert hex_dist(ZERO) == 0
    assert hex_dist(Eisenstein(2, 1)) == ORIGIN_BFS[(2, 1)] == 2
    assert hex_dist(Eisenstein(1, -1)) == ORIGIN_BFS[(1, -1)] == 2


def test_hex_dist_matches_bfs():
    for (a, b), d in ORIGIN_BFS.items():
        assert hex_dist(Eisenstein(a, b)) == d


def test_norm_examples():
    assert norm(Eisenstein(1, 1)) == 0
    assert norm(ZETA) == 1 == norm_bfs(ZETA, 5)
    for k in range(2, 30):
        assert norm(Eisenstein(k, 0)) == k - 1 == norm_bfs(Eisenstein(k, 0), 40)


def test_norm_bfs_examples():
    assert norm_bfs(ZERO, 1) == 0
    assert norm_bfs(Eisenstein(-1, -1), 3) == 1
    assert norm_bfs(Eisenstein(-3, 0), 5) == 3


def test_norm_bfs_bound_exceeded():
    with pytest.raises(BoundExceeded):
        norm_bfs(Eisenstein(-10, 0), 5)


def test_norm_zero_exactly_on_p():
    for a in range(-10, 11):
        for b in range(-10, 11):
            z = Eisenstein(a, b)
            assert (norm(z) == 0) == (z in (ZERO, ONE, ONE + ZETA))


def test_norm_matches_bfs_radius_60():
    for a in range(-60, 61):
        for b in range(-60, 61):
            z = Eisenstein(a, b)
            assert norm(z) == norm_bfs(z, 200)


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_norm_is_1_lipschitz(a, b):
    z = Eisenstein(a, b)
    for n in NEIGHBOURS:
        assert abs(norm(z + n) - norm(z)) <= 1


def test_g_examples():
    assert g(ZERO) == (-ONE, -ONE, 2)
    for k in range(2, 12):
        assert g(Eisenstein(k, 0)) == (ONE, ONE, 1)
    g1, _, g3 = g(ZETA)
    assert classify(ZETA) is R.A4
    assert g1 == ZETA2 - ONE and g3 == 0


def test_g3_pattern_and_conjugate_symmetry():
    for a in range(-25, 26):
        for b in range(-25, 26):
            z = Eisenstein(a, b)
            g1, g2, g3 = g(z)
            lab = classify(z)
            assert g3 == (2 if lab.is_p else 1 if lab.is_b else 0)
            assert g2 == g1.conj()


@pytest.mark.parametrize("radius", [3, 40])
def test_verify_tables_pass(radius):
    rep = verify_tables(radius)
    assert rep.passed, rep.summary()
    assert rep.checked == (2 * radius + 1) ** 2


def test_verify_tables_with_bfs_norm():
    assert verify_tables(15, use_bfs=True).passed


def test_verify_tables_detects_swapped_rows():
    bad = dict(TABLE)
    bad[R.A2], bad[R.A6] = TABLE[R.A6], TABLE[R.A2]
    rep = verify_tables(5, table=bad)
    assert not rep.passed
    loc = rep.first.location
    assert loc["region"] in ("A2", "A6")


def test_verify_tables_radius_precondition():
    with pytest.raises(ValueError):
        verify_tables(2)


def test_directed_distance_would_break_b1_column():
    # only forward steps 1, zeta, zeta^2: the B1 value g1 = 1 fails
    def directed(z, bound=40):
        dist = {}
        for p in (ZERO, ONE, ONE + ZETA):
            dist[(p.a, p.b)] = 0
        q = deque(dist)
        while q:
            c = q.popleft()
            if dist[c] == bound:
                continue
            for s in (ONE, ZETA, ZETA2):
                nxt = (c[0] + s.a, c[1] + s.b)
                if nxt not in dist:
                    dist[nxt] = dist[c] + 1
                    q.append(nxt)
        return dist[(z.a, z.b)]

    assert g(Eisenstein(4, 0), directed) != TABLE[R.B1]
