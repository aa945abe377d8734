"""Parisian walk paths, the exit-count local time and the radial process.

A path is a start point plus steps in {1, zeta, zeta^2}.  The local time
counts exits from the three closures: the exit made on the move
``Z_u -> Z_{u+1}`` is charged to time ``u + 1`` so that ``L_0 = 0``.  The
radial process is ``X_t = norm(Z_t) - L_t``.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .distance import norm
from .eisenstein import STEPS, ZERO, Eisenstein, Step
from .regions import ClosureId, classify, closure_ab, exits
from .rng import step_indices

ENUMERATION_CAP = 13
LAW_CAP = 40


@dataclass(frozen=True)
class WalkPath:
    start: Eisenstein
    steps: tuple[Step, ...]
    positions: tuple[Eisenstein, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pos = [self.start]
        for s in self.steps:
            pos.append(pos[-1] + s.point)
        object.__setattr__(self, "steps", tuple(Step(s) for s in self.steps))
        object.__setattr__(self, "positions", tuple(pos))

    @classmethod
    def from_steps(cls, steps: Sequence[int | Step], start: Eisenstein = ZERO) -> WalkPath:
        return cls(Eisenstein.coerce(start), tuple(Step(s) for s in steps))

    def __len__(self) -> int:
        return len(self.steps)

    def increments(self) -> list[Eisenstein]:
        return [s.point for s in self.steps]


@dataclass(frozen=True)
class LocalTimeLedger:
    l1: int = 0
    l3: int = 0
    l5: int = 0

    @property
    def L(self) -> int:
        return self.l1 + self.l3 + self.l5

    def after_exit(self, c: ClosureId | None) -> LocalTimeLedger:
        if c is None:
            return self
        if c is ClosureId.A1:
            return LocalTimeLedger(self.l1 + 1, self.l3, self.l5)
        if c is ClosureId.A3:
            return LocalTimeLedger(self.l1, self.l3 + 1, self.l5)
        return LocalTimeLedger(self.l1, self.l3, self.l5 + 1)


@dataclass(frozen=True)
class RadialProcess:
    values: tuple[int, ...]

    def increments(self) -> list[int]:
        v = self.values
        return [v[i + 1] - v[i] for i in range(len(v) - 1)]


def simulate(start: Eisenstein = ZERO, n_steps: int = 0, seed: int = 0, trial: int = 0) -> WalkPath:
    """Sample a path; step i depends only on (seed, trial, i)."""
    if n_steps < 0:
        raise ValueError("n_steps must be non-negative")
    idx = step_indices(seed, trial, n_steps)
    return WalkPath(Eisenstein.coerce(start), tuple(STEPS[j] for j in idx))


def local_time(path: WalkPath) -> list[LocalTimeLedger]:
    ledger = LocalTimeLedger()
    out = [ledger]
    pos = path.positions
    for u in range(len(path)):
        ledger = ledger.after_exit(exits(pos[u], pos[u + 1]))
        out.append(ledger)
    return out


def radial(path: WalkPath) -> RadialProcess:
    ledgers = local_time(path)
    return RadialProcess(tuple(norm(z) - lt.L for z, lt in zip(path.positions, ledgers)))


def local_time_increment(z: Eisenstein, s: Step) -> int:
    return 0 if exits(z, z + s.point) is None else 1


def radial_increment(z: Eisenstein, s: Step) -> int:
    """X_{t+1} - X_t given Z_t = z and step s."""
    w = z + s.point
    return norm(w) - norm(z) - (0 if exits(z, w) is None else 1)


def enumerate_paths(start: Eisenstein, T: int, cap: int = ENUMERATION_CAP) -> Iterator[WalkPath]:
    """All 3**T paths of length T, step words in lexicographic order (1 < zeta < zeta^2)."""
    if T < 0:
        raise ValueError("T must be non-negative")
    if T > cap:
        raise ValueError(f"enumeration cap: T={T} exceeds {cap}")
    start = Eisenstein.coerce(start)
    for word in itertools.product(STEPS, repeat=T):
        yield WalkPath(start, word)


def simple_walk_law(T: int, max_steps: int | None = LAW_CAP) -> dict[int, Fraction]:
    """Exact law of X_T - X_0 for the lazy simple walk: trinomial coefficients over 3**T."""
    if T < 0:
        raise ValueError("T must be non-negative")
    if max_steps is not None and T > max_steps:
        raise ValueError(f"law cap: T={T} exceeds {max_steps}")
    coeffs = [1]
    for _ in range(T):
        nxt = [0] * (len(coeffs) + 2)
        for i, c in enumerate(coeffs):
            nxt[i] += c
            nxt[i + 1] += c
            nxt[i + 2] += c
        coeffs = nxt
    denom = 3**T
    return {k - T: Fraction(c, denom) for k, c in enumerate(coeffs)}


CSV_COLUMNS = ("t", "a", "b", "region", "norm", "l1", "l3", "l5", "L", "X")


def path_rows(path: WalkPath) -> list[dict]:
    rows = []
    for t, (z, lt) in enumerate(zip(path.positions, local_time(path))):
        n = norm(z)
        rows.append({
            "t": t, "a": z.a, "b": z.b, "region": classify(z).value, "norm": n,
            "l1": lt.l1, "l3": lt.l3, "l5": lt.l5, "L": lt.L, "X": n - lt.L,
        })
    return rows


def to_csv(path: WalkPath) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(path_rows(path))
    return buf.getvalue()


# ---------------------------------------------------------------------------
# vectorised kernels for Monte Carlo batches

_STEP_A = np.array([1, 0, -1], dtype=np.int64)
_STEP_B = np.array([0, 1, -1], dtype=np.int64)


def _hex_arr(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    same = (a >= 0) == (b >= 0)
    aa, ab = np.abs(a), np.abs(b)
    return np.where(same | (a == 0) | (b == 0), np.maximum(aa, ab), aa + ab)


def norm_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.minimum(np.minimum(_hex_arr(a, b), _hex_arr(a - 1, b)), _hex_arr(a - 1, b - 1))


def closure_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Closure index per point: 1, 3, 5, or 0 off the closures."""
    out = np.zeros(a.shape, dtype=np.int8)
    out[(a >= 1) & (b <= 0)] = 1
    out[(a <= b) & (b <= 0)] = 3
    out[(a >= 1) & (a <= b)] = 5
    return out


@dataclass
class BatchResult:
    """Per-trial outcome of a vectorised batch, in trial order."""

    trials: np.ndarray
    dx: np.ndarray  # X_T - X_0
    a: np.ndarray
    b: np.ndarray


def simulate_batch(
    seed: int, trials: Sequence[int], n_steps: int, start: Eisenstein = ZERO, chunk: int = 256
) -> BatchResult:
    """Run many walks side by side; trial k uses the same steps as ``simulate(.., trial=k)``.

    Time is processed in chunks: positions come from cumulative sums and exits
    from consecutive closure indices, so memory is O(chunk * trials).
    """
    trials = np.asarray(trials, dtype=np.int64)
    m = len(trials)
    streams = [step_indices(seed, int(k), n_steps) for k in trials]
    a = np.full(m, start.a, dtype=np.int64)
    b = np.full(m, start.b, dtype=np.int64)
    n0 = norm_array(a, b)
    cl = closure_array(a, b)
    L = np.zeros(m, dtype=np.int64)
    for t0 in range(0, n_steps, chunk):
        s = np.stack([st[t0:t0 + chunk] for st in streams], axis=1)
        pa = a + np.cumsum(_STEP_A[s], axis=0)
        pb = b + np.cumsum(_STEP_B[s], axis=0)
        cls = np.concatenate([cl[None, :], closure_array(pa, pb)], axis=0)
        L += ((cls[:-1] != 0) & (cls[1:] != cls[:-1])).sum(axis=0)
        a, b, cl = pa[-1], pb[-1], cls[-1]
    dx = norm_array(a, b) - n0 - L
    return BatchResult(trials, dx, a.copy(), b.copy())


def closure_id(z: Eisenstein) -> int:
    c = closure_ab(z.a, z.b)
    return 0 if c is None else c.value
