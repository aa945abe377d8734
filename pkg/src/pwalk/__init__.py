"""Parisian walks on the Eisenstein lattice: exit-count local time, discrete
Ito and Tanaka formulas, and exact checks that norm(Z_t) - L_t is a lazy
simple walk."""

from .distance import hex_dist, norm, norm_bfs
from .eisenstein import ONE, STEPS, ZERO, ZETA, ZETA2, Eisenstein, QZeta, Step
from .regions import ClosureId, RegionLabel, classify, in_closure, phi, psi
from .report import VerificationReport
from .walk import LocalTimeLedger, RadialProcess, WalkPath, enumerate_paths, local_time, radial, simulate

__version__ = "0.1.0"
