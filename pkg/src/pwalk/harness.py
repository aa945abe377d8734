"""Theorem-level checks: exact (per-site and exhaustive) and statistical.

The exact checks use a condition stronger than equality of laws: at every
site the three steps must produce the three radial increments -1, 0, +1.
That makes each increment uniform given the past, which is the simple-walk
law, and it is finitely checkable.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .distance import norm
from .eisenstein import STEPS, ZERO, Eisenstein
from .regions import exits
from .report import VerificationReport, timed
from .walk import radial_increment, simple_walk_law, simulate_batch

THEOREM_CAP = 12
SUFFICIENT = "sufficient condition: per-site bijection of steps onto radial increments {-1, 0, +1}"


@dataclass
class RunConfig:
    seed: int = 0
    trials: int = 100_000
    steps: int = 100
    start: Eisenstein = ZERO
    radius: int = 60
    output: str | None = None
    format: str = "json"
    alpha: float = 1e-3
    var_tol: float = 0.05
    iso_tol: float = 0.10
    corr_tol: float = 0.05
    batch: int = 4096
    workers: int | None = None

    def __post_init__(self):
        if self.seed < 0 or self.seed >= 1 << 64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.trials <= 0 or self.steps <= 0 or self.radius <= 0:
            raise ValueError("trials, steps and radius must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")


def worker_count(explicit: int | None = None) -> int:
    if explicit:
        return explicit
    env = os.environ.get("PWALK_THREADS", "").strip()
    n = int(env) if env else 0
    return n if n > 0 else (os.cpu_count() or 1)


def per_site_bijection_check(radius: int) -> VerificationReport:
    if radius < 2:
        raise ValueError("radius must be at least 2")
    rep = VerificationReport("per-site-bijection")
    with timed(rep):
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                z = Eisenstein(a, b)
                incs = tuple(radial_increment(z, s) for s in STEPS)
                rep.checked += 1
                if sorted(incs) != [-1, 0, 1]:
                    rep.add({"z": z}, "permutation of (-1, 0, 1)", list(incs))
    rep.details.update(radius=radius, sites=(2 * radius + 1) ** 2, method=SUFFICIENT)
    return rep


def site_increments(z: Eisenstein) -> tuple[int, int, int]:
    """Radial increments for steps (1, zeta, zeta^2) from z."""
    return tuple(radial_increment(z, s) for s in STEPS)


def exhaustive_theorem_check(start: Eisenstein, T: int) -> VerificationReport:
    """Enumerate all 3**T paths; the path -> increment-word map must be a bijection onto {-1,0,1}^T."""
    if T < 0 or T > THEOREM_CAP:
        raise ValueError(f"theorem cap: T={T} must lie in [0, {THEOREM_CAP}]")
    start = Eisenstein.coerce(start)
    rep = VerificationReport("exhaustive-theorem")
    n = 3**T
    seen = bytearray(n)
    with timed(rep):
        # (position, norm, depth, code of increment word so far, code of step word so far)
        stack = [(start, norm(start), 0, 0, 0)]
        while stack:
            z, nz, depth, code, word = stack.pop()
            if depth == T:
                rep.checked += 1
                if seen[code]:
                    rep.add({"start": start, "word": word}, "distinct increment word", code)
                seen[code] = 1
                continue
            for s in STEPS:
                w = z + s.point
                nw = norm(w)
                inc = nw - nz - (0 if exits(z, w) is None else 1)
                if inc not in (-1, 0, 1):
                    rep.add({"start": start, "depth": depth, "z": z, "step": s}, "increment in {-1,0,1}", inc)
                    continue
                stack.append((w, nw, depth + 1, 3 * code + inc + 1, 3 * word + int(s)))
        missing = n - sum(seen)
        if missing:
            rep.add({"start": start, "check": "surjectivity"}, 0, missing)
    rep.details.update(start=[start.a, start.b], T=T, paths=n, method="exact bijection of step words onto increment words")
    return rep


def theorem_check(radius: int, starts, T: int) -> list[VerificationReport]:
    """Run the per-site condition and the exhaustive check side by side.

    A pass on the per-site scan at radius R guarantees the exhaustive pass for
    starts within R - T; both are run so that the implication is witnessed.
    """
    reps = [per_site_bijection_check(radius)]
    for s in starts:
        s = Eisenstein.coerce(s)
        if max(abs(s.a), abs(s.b)) + T > radius:
            raise ValueError(f"start {s!r} with T={T} leaves the scanned radius {radius}")
        reps.append(exhaustive_theorem_check(s, T))
    return reps


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass
class _Sample:
    dx: np.ndarray
    a: np.ndarray
    b: np.ndarray
    batches: int = field(default=0)


def run_trials(cfg: RunConfig) -> _Sample:
    """All trials split into index batches; output is in trial order for any worker count."""
    bounds = [(lo, min(lo + cfg.batch, cfg.trials)) for lo in range(0, cfg.trials, cfg.batch)]

    def job(lo_hi):
        lo, hi = lo_hi
        return simulate_batch(cfg.seed, range(lo, hi), cfg.steps, cfg.start)

    workers = worker_count(cfg.workers)
    if workers == 1 or len(bounds) == 1:
        results = [job(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, bounds))
    return _Sample(
        np.concatenate([r.dx for r in results]),
        np.concatenate([r.a for r in results]),
        np.concatenate([r.b for r in results]),
        len(bounds),
    )


def pooled_bins(law: dict, n: int, min_expected: float = 5.0) -> list[tuple[int, int, float]]:
    """Merge tail cells of the law until each expected count reaches ``min_expected``.

    Returns (lo, hi, probability) cells covering every support point.
    """
    keys = sorted(law)
    cells = []
    lo, acc = keys[0], 0.0
    for k in keys:
        acc += float(law[k])
        if acc * n >= min_expected:
            cells.append([lo, k, acc])
            lo, acc = k + 1, 0.0
    if acc:
        if cells:
            cells[-1][1] = keys[-1]
            cells[-1][2] += acc
        else:
            cells.append([keys[0], keys[-1], acc])
    # fold an under-filled left tail into its neighbour as well
    if len(cells) > 1 and cells[0][2] * n < min_expected:
        cells[1][0] = cells[0][0]
        cells[1][2] += cells[0][2]
        cells.pop(0)
    return [tuple(c) for c in cells]


def chi_square_vs_law(dx: np.ndarray, T: int) -> tuple[float, float, int]:
    law = simple_walk_law(T, max_steps=None)
    cells = pooled_bins(law, len(dx))
    obs = np.array([np.count_nonzero((dx >= lo) & (dx <= hi)) for lo, hi, _ in cells], dtype=float)
    exp = np.array([p for _, _, p in cells]) * len(dx)
    exp *= obs.sum() / exp.sum()
    res = stats.chisquare(obs, exp)
    return float(res.statistic), float(res.pvalue), len(cells) - 1


def monte_carlo_check(cfg: RunConfig) -> VerificationReport:
    if cfg.trials < 1000:
        raise ValueError("monte carlo needs at least 1000 trials")
    rep = VerificationReport("monte-carlo")
    with timed(rep):
        sample = run_trials(cfg)
        dx = sample.dx
        T, n = cfg.steps, len(dx)
        if np.any(np.abs(dx) > T):
            rep.add({"check": "support"}, f"|X_T - X_0| <= {T}", int(np.abs(dx).max()))
        mean = float(dx.mean())
        var = float(dx.var(ddof=1))
        target_var = 2 * T / 3
        mean_band = 3 * math.sqrt(target_var / n)
        chi2, p, dof = chi_square_vs_law(dx, T)
        rep.checked = n
        if abs(mean) > mean_band:
            rep.add({"check": "mean"}, f"|mean| <= {mean_band:.6g}", mean)
        if abs(var / target_var - 1) > cfg.var_tol:
            rep.add({"check": "variance"}, f"{target_var:.6g} +/- {cfg.var_tol:.0%}", var)
        if not p > cfg.alpha:
            rep.add({"check": "chi-square"}, f"p > {cfg.alpha}", p)
    rep.details.update(
        seed=cfg.seed, trials=n, steps=T, start=[cfg.start.a, cfg.start.b],
        mean=mean, mean_band=mean_band, variance=var, target_variance=target_var,
        chi2=chi2, dof=dof, p_value=p, alpha=cfg.alpha, var_tol=cfg.var_tol,
    )
    return rep


def scaling_probe(cfg: RunConfig) -> VerificationReport:
    """Statistical look at the diffusive limit; not an exact statement.

    X_n / sqrt(n) is compared with N(0, 2/3) by Kolmogorov-Smirnov, and the
    cartesian components of Z_n / sqrt(n) are checked for equal variance and
    vanishing correlation.
    """
    if cfg.steps < 10_000:
        raise ValueError("scaling probe needs at least 10^4 steps")
    rep = VerificationReport("scaling-probe")
    with timed(rep):
        sample = run_trials(cfg)
        n = cfg.steps
        scaled = sample.dx / math.sqrt(n)
        ks = stats.kstest(scaled, "norm", args=(0.0, math.sqrt(2 / 3)))
        x = (sample.a - sample.b / 2) / math.sqrt(n)
        y = (sample.b * math.sqrt(3) / 2) / math.sqrt(n)
        vx, vy = float(x.var(ddof=1)), float(y.var(ddof=1))
        corr = float(np.corrcoef(x, y)[0, 1])
        rep.checked = len(scaled)
        if not ks.pvalue > cfg.alpha:
            rep.add({"check": "ks"}, f"p > {cfg.alpha}", float(ks.pvalue))
        if abs(vx / vy - 1) > cfg.iso_tol:
            rep.add({"check": "isotropy"}, f"var ratio within {cfg.iso_tol:.0%}", vx / vy)
        if abs(corr) > cfg.corr_tol:
            rep.add({"check": "correlation"}, f"|corr| <= {cfg.corr_tol}", corr)
    rep.details.update(
        seed=cfg.seed, trials=len(scaled), steps=n, ks_statistic=float(ks.statistic),
        ks_p_value=float(ks.pvalue), var_x=vx, var_y=vy, corr_xy=corr,
        exact=False, note="statistical probe of the continuous-time limit only",
    )
    return rep
