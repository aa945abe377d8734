"""Acceptance suite: nine criteria, each reported as one PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import time

import pytest

from pwalk import calculus, martrep
from pwalk.distance import ball, norm, norm_bfs, verify_tables
from pwalk.eisenstein import ONE, ZERO, ZETA, Eisenstein
from pwalk.harness import RunConfig, exhaustive_theorem_check, monte_carlo_check, per_site_bijection_check, scaling_probe
from pwalk.regions import RegionLabel, generator_points, label_ab, verify_atlas
from pwalk.walk import enumerate_paths

SEED = 20240430
RESULTS: list[str] = []


def _record(n: int, name: str, ok: bool, elapsed: float, limit: float | None, detail: str = "") -> None:
    in_time = limit is None or elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"[{status}] criterion {n}: {name} in {elapsed:.2f}s{budget}{'; ' + detail if detail else ''}"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert in_time, line


class _Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def test_criterion_1_region_atlas():
    with _Clock() as c:
        rep = verify_atlas(50)
        # every generator form with indices <= 50 lands in its own region
        bad = sum(
            1
            for lab in RegionLabel
            for z in generator_points(lab, 50)
            if label_ab(z.a, z.b) is not lab
        )
    _record(1, "region atlas, |a|,|b| <= 50", rep.passed and bad == 0, c.elapsed, 1.0,
            f"{rep.checked} checks, {rep.n_violations + bad} violations")


def test_criterion_2_tables():
    with _Clock() as c:
        rep = verify_tables(40)
    _record(2, "g1, g2, g3 tables on radius 40", rep.passed, c.elapsed, None,
            f"{rep.checked} points, {rep.n_violations} mismatches")


def test_criterion_3_norm_oracle():
    with _Clock() as c:
        bound = 3 * 60 + 4
        mismatches = sum(1 for z in ball(60) if norm(z) != norm_bfs(z, bound))
    _record(3, "closed-form norm vs BFS on radius 60", mismatches == 0, c.elapsed, 5.0,
            f"{121 * 121} points, {mismatches} mismatches")


def test_criterion_4_tanaka():
    with _Clock() as c:
        sites = calculus.tanaka_site_check(60)
        paths = calculus.tanaka_path_check([ZERO, ONE, ONE + ZETA], 9)
    _record(4, "Tanaka identity, sites on radius 60 and 3^9 paths from P", sites.passed and paths.passed,
            c.elapsed, 10.0, f"{sites.checked + paths.checked} checks, {sites.n_violations + paths.n_violations} violations")


def test_criterion_5_ito():
    funcs = [calculus.norm_function(8), calculus.coordinate_a(8), calculus.coordinate_b(8)]
    funcs += [calculus.LatticeFunction.random(SEED + k, 8) for k in range(5)]
    with _Clock() as c:
        reps = [calculus.ito_identity_check(f, enumerate_paths(ZERO, 6)) for f in funcs]
    _record(5, "Ito identity for 8 functions on 3^6 paths", all(r.passed for r in reps), c.elapsed, None,
            f"{sum(r.checked for r in reps)} steps, {sum(r.n_violations for r in reps)} violations")


def test_criterion_6_theorem():
    with _Clock() as c:
        reps = [per_site_bijection_check(60)]
        reps += [exhaustive_theorem_check(Eisenstein(*s), 9) for s in [(0, 0), (1, 0), (1, 1), (5, -3)]]
    _record(6, "per-site bijection on radius 60 and exhaustive T=9 from four starts",
            all(r.passed for r in reps), c.elapsed, 10.0,
            f"{sum(r.checked for r in reps)} checks, {sum(r.n_violations for r in reps)} violations")


def test_criterion_7_martingale_representation():
    funcs = [
        martrep.AdaptedFunctional.position(),
        martrep.AdaptedFunctional.conj_position(),
        martrep.AdaptedFunctional.radial(),
        martrep.AdaptedFunctional.random(SEED),
        martrep.AdaptedFunctional.random(SEED + 1),
    ]
    with _Clock() as c:
        grams = [martrep.gram_check(t) for t in range(0, 6)]
        reps = [martrep.representation_check(X, 6) for X in funcs]
    ok = all(r.passed for r in grams + reps)
    _record(7, "Gram identity t <= 5 and exact reconstruction T <= 6", ok, c.elapsed, None,
            f"{sum(r.n_violations for r in grams + reps)} violations")


@pytest.mark.slow
def test_criterion_8_monte_carlo():
    with _Clock() as c:
        rep = monte_carlo_check(RunConfig(seed=SEED, trials=100_000, steps=100))
    d = rep.details
    _record(8, "Monte Carlo, 1e5 walks of 100 steps", rep.passed, c.elapsed, 30.0,
            f"mean {d['mean']:.4f} (band {d['mean_band']:.4f}), var {d['variance']:.3f}, chi2 p {d['p_value']:.3g}")


@pytest.mark.slow
def test_criterion_9_scaling_probe():
    with _Clock() as c:
        rep = scaling_probe(RunConfig(seed=SEED, trials=10_000, steps=10_000))
    d = rep.details
    _record(9, "scaling probe (statistical, non-exact), n=1e4, 1e4 trials", rep.passed, c.elapsed, None,
            f"KS p {d['ks_p_value']:.3g}, var ratio {d['var_x'] / d['var_y']:.3f}, corr {d['corr_xy']:.4f}")


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
