import pytest

from pwalk.eisenstein import ONE, STEPS, ZERO, ZETA, ZETA2, Eisenstein
from pwalk.regions import (
    ATLAS, CLOSURE_LABELS, ClosureId, RegionLabel as R, classify, closure_ab, generator_points,
    in_closure, label_ab, phi, psi, verify_atlas,
)

RADIUS = 50


def box(r):
    return [(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)]


@pytest.mark.parametrize("point, label", [
    ((2, 0), R.B1),
    ((2, -1), R.A1),
    ((0, 0), R.P0),
    ((0, -1), R.A2),
    ((1, 0), R.P1),
    ((1, 1), R.P1Z),
])
def test_classify_examples(point, label):
    assert classify(Eisenstein(*point)) is label


def test_a1_example_from_generator():
    # k1 = 3, k2 = 1: 3 + zeta^2 = 2 - zeta
    assert 3 * ONE + ZETA2 == Eisenstein(2, -1)


def test_in_closure_examples():
    assert in_closure(ONE, ClosureId.A1)
    assert not in_closure(ZERO, ClosureId.A1)
    assert in_closure(ZERO, ClosureId.A3)
    assert in_closure(Eisenstein(1, 1), ClosureId.A5)


def test_phi_psi_examples():
    assert phi(ONE) == ONE
    assert phi(ZERO) == ZETA
    assert phi(Eisenstein(5, 2)) == ZERO
    assert psi(Eisenstein(5, 2)) == ONE
    assert psi(ZETA) == ZETA
    assert psi(ONE) == ZERO


def test_partition_exactly_one_label():
    for a, b in box(RADIUS):
        hits = [lab for lab, pred in ATLAS.items() if pred(a, b)]
        assert hits == [label_ab(a, b)], (a, b)


def test_closures_equal_label_unions():
    for a, b in box(RADIUS):
        lab = label_ab(a, b)
        for c, labels in CLOSURE_LABELS.items():
            assert (closure_ab(a, b) is c) == (lab in labels)


def test_exactly_one_of_phi_psi_nonzero():
    for a, b in box(30):
        z = Eisenstein(a, b)
        assert (phi(z) != ZERO) != (psi(z) != ZERO)


def test_rotational_symmetry_of_closures():
    # closure 3 = zeta^2 (closure 1 - 1), closure 5 = zeta (closure 1 - 1) + (1 + zeta)
    r = 30
    c1 = {Eisenstein(a, b) for a, b in box(3 * r) if closure_ab(a, b) is ClosureId.A1}
    c3 = {(z - ONE) * ZETA2 for z in c1}
    c5 = {(z - ONE) * ZETA + ONE + ZETA for z in c1}
    for a, b in box(r):
        z = Eisenstein(a, b)
        assert (z in c3) == in_closure(z, ClosureId.A3)
        assert (z in c5) == in_closure(z, ClosureId.A5)


@pytest.mark.parametrize("label", list(R))
def test_generators_match_atlas(label):
    produced = set()
    for z in generator_points(label, 2 * RADIUS):
        if abs(z.a) <= RADIUS and abs(z.b) <= RADIUS:
            assert classify(z) is label, z
            produced.add((z.a, z.b))
    expected = {p for p in box(RADIUS) if ATLAS[label](*p)}
    assert produced == expected


def test_literal_a2_generator_collides_with_a5_closure():
    pts = list(generator_points(R.A2, 20, literal_a2=True))
    assert pts
    assert all(in_closure(z, ClosureId.A5) for z in pts)
    assert not any(classify(z) is R.A2 for z in pts)


def test_closures_are_disjoint():
    for a, b in box(20):
        z = Eisenstein(a, b)
        assert sum(in_closure(z, c) for c in ClosureId) <= 1


def test_single_step_leaves_at_most_one_closure():
    for a, b in box(20):
        z = Eisenstein(a, b)
        for s in STEPS:
            left = [c for c in ClosureId if in_closure(z, c) and not in_closure(z + s.point, c)]
            assert len(left) <= 1


def test_verify_atlas_report():
    rep = verify_atlas(RADIUS)
    assert rep.passed, rep.summary()
    assert rep.checked >= 101 * 101
