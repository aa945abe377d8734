import csv
import io
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from pwalk import rng
from pwalk.eisenstein import ONE, STEPS, ZERO, ZETA, Eisenstein, Step
from pwalk.walk import (
    CSV_COLUMNS, WalkPath, enumerate_paths, local_time, radial, simple_walk_law, simulate,
    simulate_batch, to_csv,
)


def test_simulate_zero_steps():
    p = simulate(ZERO, 0, seed=1)
    assert p.positions == (ZERO,)


def test_simulate_deterministic():
    assert simulate(ZERO, 5, seed=42) == simulate(ZERO, 5, seed=42)
    assert simulate(ZERO, 50, seed=42) != simulate(ZERO, 50, seed=43)


def test_simulate_rejects_negative_steps():
    with pytest.raises(ValueError):
        simulate(ZERO, -1)


def test_step_frequencies_within_three_sigma():
    n = 100_000
    idx = rng.step_indices(2024, 0, n)
    sigma = math.sqrt(n * (1 / 3) * (2 / 3))
    for j in range(3):
        assert abs(np.count_nonzero(idx == j) - n / 3) <= 3 * sigma


def test_steps_are_random_access():
    full = rng.step_indices(9, 4, 40)
    for i in (0, 1, 3, 4, 5, 17, 39):
        assert rng.step_at(9, 4, i) == full[i]
    assert np.array_equal(rng.step_indices(9, 4, 10, start=13), full[13:23])


def test_rejected_word_is_redrawn(monkeypatch):
    real = rng._words

    def fake(seed, trial, start, n, round_=0):
        out = real(seed, trial, start, n, round_)
        if round_ == 0 and start == 0:
            out[0] = np.uint64(2**64 - 1)
        return out

    monkeypatch.setattr(rng, "_words", fake)
    got = rng.step_indices(5, 0, 3)
    expected = int(real(5, 0, 0, 1, 1)[0] % np.uint64(3))
    assert got[0] == expected


def test_walk_path_positions():
    p = WalkPath.from_steps([Step.ONE, Step.ZETA, Step.ZETA2])
    assert p.positions == (ZERO, ONE, ONE + ZETA, ZERO)


def test_local_time_examples():
    assert local_time(WalkPath.from_steps([Step.ONE]))[-1].L == 1
    assert local_time(WalkPath.from_steps([Step.ONE]))[-1].l3 == 1
    assert local_time(WalkPath.from_steps([Step.ZETA2]))[-1].L == 0
    path = WalkPath.from_steps([Step.ONE] * 10, start=Eisenstein(2, -1))
    assert all(lt.L == 0 for lt in local_time(path))
    path = WalkPath.from_steps([Step.ONE] * 10, start=Eisenstein(2, 0))
    assert all(lt.L == 0 for lt in local_time(path))


def test_radial_examples():
    assert radial(WalkPath.from_steps([Step.ONE])).values == (0, -1)
    assert radial(WalkPath.from_steps([Step.ZETA])).values == (0, 0)
    assert radial(WalkPath.from_steps([Step.ZETA2])).values == (0, 1)


def test_enumerate_paths_counts_and_order():
    assert len(list(enumerate_paths(ZERO, 1))) == 3
    assert sum(1 for _ in enumerate_paths(ZERO, 9)) == 19683
    words = [p.steps for p in enumerate_paths(ZERO, 3)]
    assert words == sorted(words) and len(set(words)) == 27
    with pytest.raises(ValueError, match="enumeration cap"):
        next(enumerate_paths(ZERO, 14))


def test_simple_walk_law_examples():
    assert simple_walk_law(0) == {0: 1}
    assert simple_walk_law(1) == {-1: Fraction(1, 3), 0: Fraction(1, 3), 1: Fraction(1, 3)}
    assert simple_walk_law(2) == {
        -2: Fraction(1, 9), -1: Fraction(2, 9), 0: Fraction(3, 9), 1: Fraction(2, 9), 2: Fraction(1, 9)
    }
    with pytest.raises(ValueError):
        simple_walk_law(41)
    assert sum(simple_walk_law(100, max_steps=None).values()) == 1


@pytest.mark.parametrize("T", range(0, 8))
def test_simple_walk_law_matches_enumeration(T):
    counts = {}
    for incs in itertools.product((-1, 0, 1), repeat=T):
        counts[sum(incs)] = counts.get(sum(incs), 0) + 1
    assert simple_walk_law(T) == {k: Fraction(v, 3**T) for k, v in counts.items()}


@pytest.mark.parametrize("start", [ZERO, Eisenstein(1, 0), Eisenstein(1, 1), Eisenstein(5, -3), Eisenstein(-4, 7)])
def test_path_invariants_exhaustive(start):
    T = 7
    for path in enumerate_paths(start, T):
        ledgers = local_time(path)
        assert ledgers[0].L == 0
        for prev, cur in zip(ledgers, ledgers[1:]):
            assert cur.L - prev.L in (0, 1)
            assert cur.l1 >= prev.l1 and cur.l3 >= prev.l3 and cur.l5 >= prev.l5
            assert cur.L == cur.l1 + cur.l3 + cur.l5
        assert set(radial(path).increments()) <= {-1, 0, 1}


def test_martingale_property_exhaustive():
    T = 6
    for t in range(T):
        for prefix in itertools.product(STEPS, repeat=t):
            z = WalkPath.from_steps(prefix).positions[-1]
            nxt = [z + s.point for s in STEPS]
            assert nxt[0] + nxt[1] + nxt[2] == z * 3


def test_csv_schema():
    path = simulate(Eisenstein(3, -2), 25, seed=7)
    rows = list(csv.DictReader(io.StringIO(to_csv(path))))
    assert tuple(rows[0].keys()) == CSV_COLUMNS
    assert len(rows) == 26
    x = radial(path).values
    for t, row in enumerate(rows):
        assert int(row["t"]) == t
        assert int(row["X"]) == x[t] == int(row["norm"]) - int(row["L"])
        assert int(row["L"]) == int(row["l1"]) + int(row["l3"]) + int(row["l5"])


def test_batch_matches_scalar_path():
    start = Eisenstein(-2, 3)
    res = simulate_batch(11, range(5, 25), 700, start, chunk=64)
    for i, k in enumerate(range(5, 25)):
        p = simulate(start, 700, seed=11, trial=k)
        x = radial(p).values
        assert res.dx[i] == x[-1] - x[0]
        assert (int(res.a[i]), int(res.b[i])) == (p.positions[-1].a, p.positions[-1].b)
