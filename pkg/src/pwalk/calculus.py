"""Discrete Ito decomposition, the D and L operators, and the Tanaka formula.

For a function f on Z[zeta] and a step s, the increment f(z+s) - f(z) splits
as ``alpha*s + beta*conj(s) + gamma`` with

    alpha = (f(z+1) + zeta^2 f(z+zeta) + zeta f(z+zeta^2)) / 3
    beta  = (f(z+1) + zeta f(z+zeta) + zeta^2 f(z+zeta^2)) / 3
    gamma = (f(z+1) + f(z+zeta) + f(z+zeta^2) - 3 f(z)) / 3

``beta`` is the discrete derivative D f and ``gamma`` the discrete Laplacian
L f.  Taking f = norm, gamma vanishes off the closure boundaries and the
boundary drift is exactly the exit count, which gives the Tanaka formula

    norm(z+s) - norm(z) = (2/3) Re((1 - zeta^2)(phi(z) s + psi(z) conj(s))) + dL.

Everything here is exact: values live in Q(zeta) and the real-part factor
reduces to the integer ``x - y`` for ``w = x + y*zeta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .distance import norm
from .eisenstein import ONE, STEPS, ZETA, ZETA2, Eisenstein, QZeta, Step
from .regions import exits, phi, psi
from .report import VerificationReport, timed
from .walk import WalkPath

THIRD = Fraction(1, 3)


class OutOfRadius(ValueError):
    pass


class LatticeFunction:
    """A function on the lattice points with max(|a|, |b|) <= radius.

    Backed either by a materialised table or by a closed-form hook; values are
    coerced to QZeta.  Evaluating outside the radius raises OutOfRadius.
    """

    def __init__(self, radius: int, table: dict | None = None, fn: Callable | None = None, name: str = "f"):
        if table is None and fn is None:
            raise ValueError("need a table or a function")
        self.radius = radius
        self.table = table
        self.fn = fn
        self.name = name

    def __repr__(self) -> str:
        kind = "table" if self.table is not None else "fn"
        return f"LatticeFunction({self.name!r}, radius={self.radius}, {kind})"

    def contains(self, z: Eisenstein) -> bool:
        return abs(z.a) <= self.radius and abs(z.b) <= self.radius

    def __call__(self, z: Eisenstein) -> QZeta:
        if not self.contains(z):
            raise OutOfRadius(f"{self.name} evaluated at {z!r} outside radius {self.radius}")
        if self.table is not None:
            return self.table[(z.a, z.b)]
        return QZeta.coerce(self.fn(z))

    @classmethod
    def from_callable(cls, fn: Callable, radius: int, name: str = "f") -> LatticeFunction:
        return cls(radius, fn=fn, name=name)

    @classmethod
    def tabulate(cls, fn: Callable, radius: int, name: str = "f") -> LatticeFunction:
        table = {
            (a, b): QZeta.coerce(fn(Eisenstein(a, b)))
            for a in range(-radius, radius + 1)
            for b in range(-radius, radius + 1)
        }
        return cls(radius, table=table, name=name)

    @classmethod
    def random(cls, seed: int, radius: int, box: int = 6) -> LatticeFunction:
        """Seeded table with values (p + q*zeta)/3, |p|, |q| <= box."""
        side = 2 * radius + 1
        gen = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), 0xF00D]))
        vals = gen.integers(-box, box + 1, size=(side, side, 2))
        table = {}
        for i in range(side):
            for j in range(side):
                p, q = vals[i, j]
                table[(i - radius, j - radius)] = QZeta(Fraction(int(p), 3), Fraction(int(q), 3))
        return cls(radius, table=table, name=f"random[{seed}]")


def norm_function(radius: int) -> LatticeFunction:
    return LatticeFunction.from_callable(norm, radius, name="norm")


def coordinate_a(radius: int) -> LatticeFunction:
    return LatticeFunction.from_callable(lambda z: z.a, radius, name="a")


def coordinate_b(radius: int) -> LatticeFunction:
    return LatticeFunction.from_callable(lambda z: z.b, radius, name="b")


@dataclass(frozen=True)
class ItoCoefficients:
    alpha: QZeta
    beta: QZeta
    gamma: QZeta

    def increment(self, s: Eisenstein) -> QZeta:
        return self.alpha * s + self.beta * s.conj() + self.gamma


def _forward(f: LatticeFunction, z: Eisenstein) -> tuple[QZeta, QZeta, QZeta]:
    return f(z + ONE), f(z + ZETA), f(z + ZETA2)


def ito_coefficients(f: LatticeFunction, z: Eisenstein) -> ItoCoefficients:
    f0 = f(z)
    f1, fz, fz2 = _forward(f, z)
    alpha = (f1 + ZETA2 * fz + ZETA * fz2) * THIRD
    beta = (f1 + ZETA * fz + ZETA2 * fz2) * THIRD
    gamma = (f1 + fz + fz2 - 3 * f0) * THIRD
    return ItoCoefficients(alpha, beta, gamma)


def discrete_derivative(f: LatticeFunction, z: Eisenstein) -> QZeta:
    f1, fz, fz2 = _forward(f, z)
    return (f1 + ZETA * fz + ZETA2 * fz2) * THIRD


def discrete_laplacian(f: LatticeFunction, z: Eisenstein) -> QZeta:
    f0 = f(z)
    f1, fz, fz2 = _forward(f, z)
    return (f1 + fz + fz2 - 3 * f0) * THIRD


def _as_paths(paths) -> Iterable[WalkPath]:
    return [paths] if isinstance(paths, WalkPath) else paths


def ito_identity_check(f: LatticeFunction, paths, coefficients=ito_coefficients) -> VerificationReport:
    """Check f(Z_{t+1}) - f(Z_t) = alpha dZ + beta conj(dZ) + gamma along each path.

    Coefficients at a site are computed once and reused across paths.
    """
    rep = VerificationReport(f"ito[{f.name}]")
    cache: dict[Eisenstein, ItoCoefficients] = {}
    with timed(rep):
        for k, path in enumerate(_as_paths(paths)):
            pos = path.positions
            for t, s in enumerate(path.steps):
                z = pos[t]
                c = cache.get(z)
                if c is None:
                    c = cache[z] = coefficients(f, z)
                lhs = f(pos[t + 1]) - f(z)
                rhs = c.increment(s.point)
                rep.checked += 1
                if lhs != rhs:
                    rep.add({"path": k, "t": t, "z": z, "step": s}, lhs, rhs)
    return rep


# ---------------------------------------------------------------------------
# real-valued reduction: exact arithmetic in Q(sqrt 3)


@dataclass(frozen=True)
class Surd:
    """u + v*sqrt(3) with rational u, v."""

    u: Fraction
    v: Fraction = Fraction(0)

    def __add__(self, o: Surd) -> Surd:
        return Surd(self.u + o.u, self.v + o.v)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return Surd(self.u * o, self.v * o)
        return Surd(self.u * o.u + 3 * self.v * o.v, self.u * o.v + self.v * o.u)

    __rmul__ = __mul__


def re_part(w: QZeta) -> Surd:
    return Surd(w.re())


def im_part(w: QZeta) -> Surd:
    return Surd(Fraction(0), w.im_over_sqrt3())


def real_ito_increment(f: LatticeFunction, z: Eisenstein, s: Eisenstein, scale: int = 2) -> Surd:
    """scale*(Re Df Re s + Im Df Im s) + L f, under zeta = (-1 + i sqrt 3)/2.

    For real-valued f this equals f(z+s) - f(z) only with scale 2, since
    alpha = conj(D f) and alpha*s + conj(alpha*s) = 2 Re(alpha*s).
    """
    d = discrete_derivative(f, z)
    ds = QZeta.coerce(s)
    inner = re_part(d) * re_part(ds) + im_part(d) * im_part(ds)
    lap = discrete_laplacian(f, z)
    return inner * scale + Surd(lap.re(), lap.im_over_sqrt3())


def real_ito_check(f: LatticeFunction, paths, scale: int = 2) -> VerificationReport:
    rep = VerificationReport(f"real-ito[{f.name}]")
    with timed(rep):
        for k, path in enumerate(_as_paths(paths)):
            pos = path.positions
            for t, s in enumerate(path.steps):
                lhs = f(pos[t + 1]) - f(pos[t])
                if lhs.b != 0:
                    raise ValueError(f"{f.name} is not real-valued at {pos[t + 1]!r}")
                rhs = real_ito_increment(f, pos[t], s.point, scale)
                rep.checked += 1
                if rhs != Surd(lhs.a):
                    rep.add({"path": k, "t": t, "z": pos[t], "step": s}, lhs.a, [rhs.u, rhs.v])
    rep.details["embedding"] = "zeta = (-1 + i*sqrt(3))/2"
    rep.details["scale"] = scale
    return rep


# ---------------------------------------------------------------------------
# Tanaka formula


def two_thirds_re(w: QZeta) -> Fraction:
    """(2/3) Re((1 - zeta^2) w); equals x - y for w = x + y*zeta."""
    return Fraction(2, 3) * ((ONE - ZETA2) * QZeta.coerce(w)).re()


def martingale_step(z: Eisenstein, s: Eisenstein, phi_fn=phi, psi_fn=psi) -> Eisenstein:
    """phi(z) s + psi(z) conj(s): the step of the driving walk in the Tanaka formula."""
    return phi_fn(z) * s + psi_fn(z) * s.conj()


def tanaka_increment(z: Eisenstein, s: Step | Eisenstein, phi_fn=phi, psi_fn=psi) -> tuple[int, int]:
    """(martingale part, local-time increment) of norm(z+s) - norm(z)."""
    sp = s.point if isinstance(s, Step) else s
    w = martingale_step(z, sp, phi_fn, psi_fn)
    mart = w.a - w.b
    dL = 0 if exits(z, z + sp) is None else 1
    return mart, dL


def tanaka_identity_check(paths, phi_fn=phi, psi_fn=psi) -> VerificationReport:
    rep = VerificationReport("tanaka")
    with timed(rep):
        for k, path in enumerate(_as_paths(paths)):
            pos = path.positions
            for t, s in enumerate(path.steps):
                z, w = pos[t], pos[t + 1]
                mart, dL = tanaka_increment(z, s, phi_fn, psi_fn)
                lhs = norm(w) - norm(z)
                rep.checked += 1
                if lhs != mart + dL:
                    rep.add({"path": k, "t": t, "z": z, "step": s}, lhs, mart + dL)
    return rep


def tanaka_site_check(radius: int, phi_fn=phi, psi_fn=psi) -> VerificationReport:
    """All single steps from every z with |a|, |b| <= radius."""
    rep = VerificationReport("tanaka-sites")
    with timed(rep):
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                z = Eisenstein(a, b)
                nz = norm(z)
                for s in STEPS:
                    mart, dL = tanaka_increment(z, s, phi_fn, psi_fn)
                    lhs = norm(z + s.point) - nz
                    rep.checked += 1
                    if lhs != mart + dL:
                        rep.add({"z": z, "step": s}, lhs, mart + dL)
    rep.details["radius"] = radius
    return rep


def tanaka_path_check(starts, T: int) -> VerificationReport:
    """Exhaustive Tanaka check over every step word of length T, walked as a tree."""
    rep = VerificationReport("tanaka-paths")
    n_paths = 0
    with timed(rep):
        for start in starts:
            start = Eisenstein.coerce(start)
            # each tree edge is shared by 3**(T - depth - 1) paths
            stack = [(start, 0, ())]
            while stack:
                z, depth, word = stack.pop()
                if depth == T:
                    n_paths += 1
                    continue
                nz = norm(z)
                for s in STEPS:
                    mart, dL = tanaka_increment(z, s)
                    w = z + s.point
                    weight = 3 ** (T - depth - 1)
                    rep.checked += weight
                    if norm(w) - nz != mart + dL:
                        rep.add({"start": start, "prefix": word + (s,)}, norm(w) - nz, mart + dL)
                    stack.append((w, depth + 1, word + (s,)))
    rep.details.update(T=T, paths=n_paths)
    return rep


def martingale_step_is_unit(z: Eisenstein) -> bool:
    """phi(z) s + psi(z) conj(s) runs over {1, zeta, zeta^2} as s does."""
    got = {martingale_step(z, s.point) for s in STEPS}
    return got == {ONE, ZETA, ZETA2}

