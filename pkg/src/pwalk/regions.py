"""The 15-part partition of Z[zeta] used by the local time and Tanaka weights.

For ``z = a + b*zeta`` the labels are given by closed-form inequalities:

    P0 (0,0)   P1 (1,0)   P1Z (1,1)
    B1  b = 0, a >= 2          B4  b = 0, a <= -1
    B2  a = 1, b >= 2          B5  a = 1, b <= -1
    B3  a = b <= -1            B6  a = b >= 2
    A1  a >= 2, b <= -1        A4  a <= 0, b >= 1
    A2  b <= -1, b+1 <= a <= 0 A5  2 <= a <= b-1
    A3  b <= -1, a <= b-1      A6  b >= 1, a >= b+1

The three closures are the sectors ``{a >= 1, b <= 0}``, ``{a <= b <= 0}`` and
``{1 <= a <= b}``; they are pairwise disjoint and, together with A2, A4 and A6,
tile the lattice.

A2 is the sector ``-k2 - k1*zeta`` with ``0 <= k2 < k1``.  The variant
generator ``-k1*zeta**2 - k2`` lands on the A5 closure instead; see
``generator_points``.
"""

from __future__ import annotations

from enum import Enum

from .eisenstein import ONE, ZERO, ZETA, ZETA2, Eisenstein
from .report import VerificationReport, timed


class RegionLabel(Enum):
    P0 = "P0"
    P1 = "P1"
    P1Z = "P1Z"
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    A6 = "A6"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    B5 = "B5"
    B6 = "B6"

    def __str__(self) -> str:
        return self.value

    @property
    def is_p(self) -> bool:
        return self.value.startswith("P")

    @property
    def is_a(self) -> bool:
        return self.value.startswith("A")

    @property
    def is_b(self) -> bool:
        return self.value.startswith("B")


class ClosureId(Enum):
    A1 = 1
    A3 = 3
    A5 = 5

    def __str__(self) -> str:
        return f"Ā{self.value}"


R = RegionLabel

CLOSURE_LABELS = {
    ClosureId.A1: frozenset({R.A1, R.B1, R.B5, R.P1}),
    ClosureId.A3: frozenset({R.A3, R.B3, R.B4, R.P0}),
    ClosureId.A5: frozenset({R.A5, R.B2, R.B6, R.P1Z}),
}

P_POINTS = (ZERO, ONE, ONE + ZETA)


def label_ab(a: int, b: int) -> RegionLabel:
    if b == 0:
        if a >= 2:
            return R.B1
        if a == 1:
            return R.P1
        if a == 0:
            return R.P0
        return R.B4
    if b > 0:
        if a <= 0:
            return R.A4
        if a == 1:
            return R.P1Z if b == 1 else R.B2
        if a < b:
            return R.A5
        if a == b:
            return R.B6
        return R.A6
    # b <= -1
    if a >= 2:
        return R.A1
    if a == 1:
        return R.B5
    if a > b:
        return R.A2
    if a == b:
        return R.B3
    return R.A3


def classify(z: Eisenstein) -> RegionLabel:
    return label_ab(z.a, z.b)


def closure_ab(a: int, b: int) -> ClosureId | None:
    """The closure containing (a, b), or None when the point lies in A2, A4 or A6."""
    if a >= 1 and b <= 0:
        return ClosureId.A1
    if a <= b <= 0:
        return ClosureId.A3
    if 1 <= a <= b:
        return ClosureId.A5
    return None


def closure_of(z: Eisenstein) -> ClosureId | None:
    return closure_ab(z.a, z.b)


def in_closure(z: Eisenstein, c: ClosureId) -> bool:
    return closure_ab(z.a, z.b) is c


_PHI = {ClosureId.A1: ONE, ClosureId.A3: ZETA, ClosureId.A5: ZETA2}
_PSI = {R.A6: ONE, R.A4: ZETA, R.A2: ZETA2}


def phi(z: Eisenstein) -> Eisenstein:
    """Tanaka weight attached to the closures: 1, zeta, zeta^2 on the A1, A3, A5 closures."""
    c = closure_ab(z.a, z.b)
    return ZERO if c is None else _PHI[c]


def psi(z: Eisenstein) -> Eisenstein:
    """Tanaka weight attached to the open sectors: 1, zeta, zeta^2 on A6, A4, A2."""
    return _PSI.get(label_ab(z.a, z.b), ZERO)


def exits(z: Eisenstein, w: Eisenstein) -> ClosureId | None:
    """The closure left by the move z -> w, if any.

    The closures are disjoint, so a single move leaves at most one of them.
    """
    c = closure_ab(z.a, z.b)
    if c is not None and closure_ab(w.a, w.b) is not c:
        return c
    return None


def generator_points(label: RegionLabel, n: int, *, literal_a2: bool = False):
    """Yield the points of a region from its index-pair parametrisation.

    Indices run over ``0 <= k <= n``.  P points are returned as singletons.
    With ``literal_a2`` the A2 generator takes the variant form
    ``-k1*zeta^2 - k2`` (0 <= k2 < k1), which is kept for negative controls.
    """
    rng = range(0, n + 1)
    if label is R.P0:
        yield ZERO
    elif label is R.P1:
        yield ONE
    elif label is R.P1Z:
        yield ONE + ZETA
    elif label is R.A1:
        for k1 in rng:
            for k2 in rng:
                if 1 < k2 + 1 < k1:
                    yield k1 * ONE + k2 * ZETA2
    elif label is R.A2:
        for k1 in rng:
            for k2 in range(0, min(k1, n + 1)):
                if literal_a2:
                    yield -k1 * ZETA2 - k2 * ONE
                else:
                    yield -k2 * ONE - k1 * ZETA
    elif label is R.A3:
        for k1 in rng:
            for k2 in range(1, min(k1, n + 1)):
                yield -k1 * ONE - k2 * ZETA
    elif label is R.A4:
        for k1 in rng:
            for k2 in range(0, min(k1, n + 1)):
                yield k1 * ZETA + k2 * ZETA2
    elif label is R.A5:
        for k1 in rng:
            for k2 in rng:
                if 1 < k2 + 1 < k1:
                    yield -k1 * ZETA2 - k2 * ONE
    elif label is R.A6:
        for k1 in rng:
            for k2 in range(1, min(k1, n + 1)):
                yield k1 * ONE + k2 * ZETA
    elif label is R.B1:
        for k in range(2, n + 1):
            yield Eisenstein(k, 0)
    elif label is R.B2:
        for k in range(1, n + 1):
            yield k * ZETA - ZETA2
    elif label is R.B3:
        for k in range(1, n + 1):
            yield k * ZETA2
    elif label is R.B4:
        for k in range(1, n + 1):
            yield Eisenstein(-k, 0)
    elif label is R.B5:
        for k in range(1, n + 1):
            yield ONE - k * ZETA
    elif label is R.B6:
        for k in range(2, n + 1):
            yield -k * ZETA2
    else:  # pragma: no cover
        raise ValueError(label)


# One predicate per label, written independently of the decision tree in
# ``label_ab`` so that the partition property can be checked rather than assumed.
ATLAS = {
    R.P0: lambda a, b: a == 0 and b == 0,
    R.P1: lambda a, b: a == 1 and b == 0,
    R.P1Z: lambda a, b: a == 1 and b == 1,
    R.B1: lambda a, b: b == 0 and a >= 2,
    R.B2: lambda a, b: a == 1 and b >= 2,
    R.B3: lambda a, b: a == b and b <= -1,
    R.B4: lambda a, b: b == 0 and a <= -1,
    R.B5: lambda a, b: a == 1 and b <= -1,
    R.B6: lambda a, b: a == b and a >= 2,
    R.A1: lambda a, b: a >= 2 and b <= -1,
    R.A2: lambda a, b: b <= -1 and b + 1 <= a <= 0,
    R.A3: lambda a, b: b <= -1 and a <= b - 1,
    R.A4: lambda a, b: a <= 0 and b >= 1,
    R.A5: lambda a, b: 2 <= a <= b - 1,
    R.A6: lambda a, b: b >= 1 and a >= b + 1,
}


def verify_atlas(radius: int = 50) -> VerificationReport:
    """Partition, closure and generator checks on the box |a|, |b| <= radius."""
    rep = VerificationReport("region-atlas")
    with timed(rep):
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                rep.checked += 1
                hits = [lab for lab, pred in ATLAS.items() if pred(a, b)]
                if len(hits) != 1 or hits[0] is not label_ab(a, b):
                    rep.add({"point": (a, b)}, "exactly one label", [h.value for h in hits])
                    continue
                for c, labels in CLOSURE_LABELS.items():
                    if (closure_ab(a, b) is c) != (hits[0] in labels):
                        rep.add({"point": (a, b), "closure": str(c)}, hits[0] in labels, closure_ab(a, b) is c)
        # generator forms: indices up to 2*radius reach every box point
        for label in RegionLabel:
            produced = set()
            for z in generator_points(label, 2 * radius):
                if abs(z.a) <= radius and abs(z.b) <= radius:
                    produced.add((z.a, z.b))
                    if label_ab(z.a, z.b) is not label:
                        rep.add({"generator": label.value, "point": z}, label.value, label_ab(z.a, z.b).value)
            atlas_pts = {
                (a, b)
                for a in range(-radius, radius + 1)
                for b in range(-radius, radius + 1)
                if ATLAS[label](a, b)
            }
            rep.checked += len(atlas_pts)
            missing = atlas_pts - produced
            if missing:
                rep.add({"generator": label.value, "check": "coverage"}, 0, len(missing))
    rep.details["radius"] = radius
    return rep
