"""Orthonormal basis of L^2(F_t) built from walk increments, and the
martingale representation it induces.

For a word ``S = (s_1, ..., s_t)`` over {1, zeta, zeta^2}, the basis element
``dZ_S`` is the product of ``dZ_i`` over positions with ``s_i = zeta`` and of
``conj(dZ_i)`` over positions with ``s_i = zeta^2``; positions with ``s_i = 1``
contribute no factor.  Since every increment is a cube root of unity,
``dZ_S = zeta^(<S, j>)`` where ``j`` holds the step exponents, and the
coefficients ``x_S = E[(X_t - X_{t-1}) conj(dZ_S)]`` are a Fourier transform
over (Z/3)^t.  All expectations are exact averages over the 3^t paths.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable

import numpy as np

from .distance import norm
from .eisenstein import ONE, STEPS, ZERO, Eisenstein, QZeta, Step
from .regions import exits
from .report import VerificationReport, timed
from .walk import WalkPath

GRAM_CAP = 5
REPRESENTATION_CAP = 7

Word = tuple  # tuple[Step, ...]


def words(t: int):
    """All 3**t signature words, lexicographic."""
    return itertools.product(STEPS, repeat=t)


def onb_element(S: Word, path: WalkPath) -> Eisenstein:
    if len(path) < len(S):
        raise ValueError(f"path of length {len(path)} is shorter than word of length {len(S)}")
    out = ONE
    for s, dz in zip(S, path.increments()):
        if s is Step.ZETA:
            out = out * dz
        elif s is Step.ZETA2:
            out = out * dz.conj()
    return out


def _exponents(t: int) -> np.ndarray:
    """Row k holds the step exponents of the k-th word of length t."""
    return np.array(list(itertools.product(range(3), repeat=t)), dtype=np.int64).reshape(3**t, t)


def gram_check(t: int) -> VerificationReport:
    """E[dZ_S conj(dZ_S')] over all 3**t paths must be the identity matrix."""
    if t < 0 or t > GRAM_CAP:
        raise ValueError(f"gram cap: t={t} must lie in [0, {GRAM_CAP}]")
    rep = VerificationReport(f"gram[t={t}]")
    with timed(rep):
        J = _exponents(t)
        # phase[S, path] = <S, j(path)> mod 3, i.e. dZ_S(path) = zeta^phase
        phase = (J @ J.T) % 3
        n = 3**t
        eye = np.eye(n, dtype=bool)
        for i in range(n):
            diff = (phase[i][None, :] - phase) % 3
            counts = np.stack([(diff == r).sum(axis=1) for r in range(3)], axis=1)
            # entry = (c0 + c1 zeta + c2 zeta^2) / 3^t; identity iff c = (n,0,0) on
            # the diagonal and c0 = c1 = c2 elsewhere
            ok = np.where(eye[i], counts[:, 0] == n, (counts[:, 0] == counts[:, 1]) & (counts[:, 1] == counts[:, 2]))
            rep.checked += n
            for k in np.flatnonzero(~ok):
                c0, c1, c2 = (int(c) for c in counts[k])
                entry = QZeta(Fraction(c0 - c2, n), Fraction(c1 - c2, n))
                rep.add({"S": i, "S'": int(k)}, QZeta(1 if i == k else 0), entry)
    rep.details["dimension"] = 3**t
    return rep


class AdaptedFunctional:
    """X_t as a function of the first t steps; values coerced to QZeta.

    ``fn`` receives the step prefix only, so adaptedness holds by construction.
    """

    def __init__(self, fn: Callable[[tuple], object], name: str = "X", martingale: bool = False):
        self.fn = fn
        self.name = name
        self.martingale = martingale
        self._cache: dict[tuple, QZeta] = {}

    def __call__(self, prefix: tuple) -> QZeta:
        v = self._cache.get(prefix)
        if v is None:
            v = self._cache[prefix] = QZeta.coerce(self.fn(prefix))
        return v

    def increment(self, prefix: tuple) -> QZeta:
        return self(prefix) - self(prefix[:-1])

    @classmethod
    def position(cls, start: Eisenstein = ZERO) -> AdaptedFunctional:
        def z(prefix):
            return start + sum((s.point for s in prefix), ZERO)
        return cls(z, "Z", martingale=True)

    @classmethod
    def conj_position(cls, start: Eisenstein = ZERO) -> AdaptedFunctional:
        def zbar(prefix):
            return (start + sum((s.point for s in prefix), ZERO)).conj()
        return cls(zbar, "conj(Z)", martingale=True)

    @classmethod
    def radial(cls, start: Eisenstein = ZERO) -> AdaptedFunctional:
        memo: dict[tuple, tuple[Eisenstein, int]] = {(): (start, norm(start))}

        def state(prefix):
            got = memo.get(prefix)
            if got is None:
                z, x = state(prefix[:-1])
                w = z + prefix[-1].point
                x += norm(w) - norm(z) - (0 if exits(z, w) is None else 1)
                got = memo[prefix] = (w, x)
            return got

        return cls(lambda p: state(p)[1], "radial", martingale=True)

    @classmethod
    def constant(cls, c=0) -> AdaptedFunctional:
        return cls(lambda p: c, "const", martingale=True)

    @classmethod
    def random(cls, seed: int, box: int = 6) -> AdaptedFunctional:
        """Seeded values (p + q*zeta)/3 with |p|, |q| <= box, one draw per prefix."""
        def value(prefix):
            key = int("".join(str(int(s)) for s in prefix) or "0", 3) + 3 ** len(prefix)
            gen = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), key]))
            p, q = gen.integers(-box, box + 1, size=2)
            return QZeta(Fraction(int(p), 3), Fraction(int(q), 3))
        return cls(value, f"random[{seed}]")


def _transform(values: list[QZeta], t: int, sign: int) -> list[QZeta]:
    """sum_j v[j] zeta^(sign * <s, j>) for every s, one axis at a time.

    ``values`` is indexed by the base-3 number of the word, most significant
    digit first, matching ``words(t)`` order.
    """
    out = list(values)
    for axis in range(t):
        stride = 3 ** (t - 1 - axis)
        nxt = [None] * len(out)
        for base in range(len(out)):
            if (base // stride) % 3:
                continue
            v = (out[base], out[base + stride], out[base + 2 * stride])
            for s in range(3):
                nxt[base + s * stride] = v[0] + v[1].rotate(sign * s) + v[2].rotate(2 * sign * s)
        out = nxt
    return out


def _increments(X: AdaptedFunctional, t: int) -> list[QZeta]:
    return [X.increment(w) for w in words(t)]


def coefficients(X: AdaptedFunctional, t: int) -> dict[Word, QZeta]:
    """x_S = E[(X_t - X_{t-1}) conj(dZ_S)] for every word S of length t."""
    if t < 1 or t > REPRESENTATION_CAP:
        raise ValueError(f"coefficient cap: t={t} must lie in [1, {REPRESENTATION_CAP}]")
    raw = _transform(_increments(X, t), t, sign=-1)
    n = 3**t
    return {w: v / n for w, v in zip(words(t), raw)}


def coefficients_direct(X: AdaptedFunctional, t: int, start: Eisenstein = ZERO) -> dict[Word, QZeta]:
    """Same as ``coefficients`` by literal averaging of products; O(9^t)."""
    paths = [(w, WalkPath(start, w)) for w in words(t)]
    n = 3**t
    out = {}
    for S in words(t):
        acc = QZeta()
        for w, path in paths:
            acc = acc + X.increment(w) * onb_element(S, path).conj()
        out[S] = acc / n
    return out


def integrands(X: AdaptedFunctional, t: int, x: dict | None = None) -> tuple[dict, dict, dict]:
    """Predictable (H, K, G) with X_t - X_{t-1} = H dZ_t + K conj(dZ_t) + G.

    Each is a map from step prefixes of length t-1 to Q(zeta).  They are the
    coefficient slices with last letter zeta, zeta^2 and 1 respectively,
    synthesised back over the prefix.
    """
    if x is None:
        x = coefficients(X, t)
    prefixes = list(words(t - 1))
    out = []
    for last in (Step.ZETA, Step.ZETA2, Step.ONE):
        sl = [x[p + (last,)] for p in prefixes]
        vals = _transform(sl, t - 1, sign=+1)
        out.append(dict(zip(prefixes, vals)))
    return out[0], out[1], out[2]


def representation_check(X: AdaptedFunctional, T: int) -> VerificationReport:
    """Exact reconstruction of every increment of X up to time T on all 3**T paths.

    Since X_t depends on the first t steps only, checking each prefix of
    length t covers every path of length T.
    """
    if T < 1 or T > REPRESENTATION_CAP:
        raise ValueError(f"representation cap: T={T} must lie in [1, {REPRESENTATION_CAP}]")
    rep = VerificationReport(f"martrep[{X.name}]")
    parseval_ok = True
    drift_nonzero = 0
    with timed(rep):
        for t in range(1, T + 1):
            x = coefficients(X, t)
            H, K, G = integrands(X, t, x)
            for w in words(t):
                p, s = w[:-1], w[-1]
                dz = s.point
                recon = H[p] * dz + K[p] * dz.conj() + G[p]
                rep.checked += 1
                if recon != X.increment(w):
                    rep.add({"t": t, "word": w}, X.increment(w), recon)
            for p in words(t - 1):
                cond_mean = sum((X.increment(p + (s,)) for s in STEPS), QZeta()) / 3
                if cond_mean != G[p]:
                    rep.add({"t": t, "prefix": p, "check": "drift"}, cond_mean, G[p])
                if G[p]:
                    drift_nonzero += 1
                    if X.martingale:
                        rep.add({"t": t, "prefix": p, "check": "martingale drift"}, 0, G[p])
            energy = sum((v.abs_sq() for v in x.values()), Fraction(0))
            second = sum((X.increment(w).abs_sq() for w in words(t)), Fraction(0)) / 3**t
            if energy != second:
                parseval_ok = False
                rep.add({"t": t, "check": "parseval"}, second, energy)
    rep.details.update(T=T, parseval=parseval_ok, nonzero_drift_prefixes=drift_nonzero)
    return rep
