"""Command line entry point.

Exit codes: 0 when every check passes, 1 on a verification or statistical
failure, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import calculus, martrep
from .distance import BoundExceeded, norm, norm_bfs, verify_tables
from .eisenstein import ONE, ZERO, ZETA, Eisenstein
from .harness import RunConfig, exhaustive_theorem_check, monte_carlo_check, per_site_bijection_check, scaling_probe
from .regions import ClosureId, classify, in_closure
from .report import VerificationReport
from .walk import enumerate_paths, path_rows, simulate, to_csv

COMMANDS = (
    "simulate", "classify", "norm", "tables", "verify-ito", "verify-tanaka",
    "verify-martrep", "verify-theorem", "mc", "scaling-probe",
)


class UsageError(Exception):
    pass


def _point(text: str) -> Eisenstein:
    try:
        a, b = text.split(",")
        return Eisenstein(int(a), int(b))
    except (ValueError, OverflowError):
        raise argparse.ArgumentTypeError(f"expected a,b integers, got {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text: str) -> int:
    v = _nonneg(text)
    if v >= 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--steps", type=_nonneg)
    common.add_argument("--trials", type=_positive)
    common.add_argument("--start", type=_point, default=ZERO, help="lattice point a,b")
    common.add_argument("--radius", type=_positive)
    common.add_argument("--t", type=_nonneg)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--alpha", type=float, default=1e-3, help="p-value threshold")
    common.add_argument("--var-tol", type=float, default=0.05)
    common.add_argument("--iso-tol", type=float, default=0.10)
    common.add_argument("--function", choices=("norm", "a", "b", "random"), default="norm")

    parser = argparse.ArgumentParser(prog="pwalk", description="Parisian walks on the Eisenstein lattice")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    # "--start -1,2" would otherwise be read as an unknown flag
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--start" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--start={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def _merge(name: str, reports: list[VerificationReport], **details) -> VerificationReport:
    out = VerificationReport(name)
    for r in reports:
        out.checked += r.checked
        out.elapsed_ms += r.elapsed_ms
        out.n_violations += r.n_violations
        out.violations.extend(r.violations[: max(0, out.max_violations - len(out.violations))])
    out.elapsed_ms = round(out.elapsed_ms, 3)
    out.details = {"parts": [{"name": r.name, "checked": r.checked, "n_violations": r.n_violations,
                              "details": r.details} for r in reports], **details}
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(rep: VerificationReport, args) -> int:
    _emit(rep.to_json(indent=2) + "\n", args.out)
    print(rep.summary(), file=sys.stderr)
    return 0 if rep.passed else 1


def _cfg(args, trials: int, steps: int) -> RunConfig:
    try:
        return RunConfig(
            seed=args.seed, trials=args.trials or trials, steps=args.steps or steps, start=args.start,
            alpha=args.alpha, var_tol=args.var_tol, iso_tol=args.iso_tol,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_simulate(args) -> int:
    steps = 100 if args.steps is None else args.steps
    path = simulate(args.start, steps, args.seed)
    if (args.format or "csv") == "csv":
        _emit(to_csv(path), args.out)
    else:
        _emit(json.dumps(path_rows(path), indent=1) + "\n", args.out)
    return 0


def cmd_classify(args) -> int:
    z = args.start
    label = classify(z)
    closures = [str(c) for c in ClosureId if in_closure(z, c)]
    if args.format == "json":
        _emit(json.dumps({"point": [z.a, z.b], "region": label.value, "closures": closures}) + "\n", args.out)
    else:
        _emit(f"{label.value}\nclosures: {', '.join(closures) or 'none'}\n", args.out)
    return 0


def cmd_norm(args) -> int:
    z = args.start
    n = norm(z)
    bound = args.radius or (abs(z.a) + abs(z.b) + 2)
    try:
        nb = norm_bfs(z, bound)
    except BoundExceeded as e:
        raise UsageError(str(e)) from None
    if args.format == "json":
        _emit(json.dumps({"point": [z.a, z.b], "norm": n, "norm_bfs": nb}) + "\n", args.out)
    else:
        _emit(f"{n}\n", args.out)
    return 0 if n == nb else 1


def cmd_tables(args) -> int:
    return _report(verify_tables(args.radius or 40), args)


def _lattice_function(args, radius: int) -> calculus.LatticeFunction:
    kind = args.function
    if kind == "norm":
        return calculus.norm_function(radius)
    if kind == "a":
        return calculus.coordinate_a(radius)
    if kind == "b":
        return calculus.coordinate_b(radius)
    return calculus.LatticeFunction.random(args.seed, radius)


def cmd_verify_ito(args) -> int:
    T = 6 if args.t is None else args.t
    if T > 13:
        raise UsageError("enumeration cap: --t must be at most 13")
    z = args.start
    f = _lattice_function(args, max(abs(z.a), abs(z.b)) + T + 1)
    return _report(calculus.ito_identity_check(f, enumerate_paths(z, T)), args)


def cmd_verify_tanaka(args) -> int:
    T = 9 if args.t is None else args.t
    if T > 13:
        raise UsageError("enumeration cap: --t must be at most 13")
    radius = args.radius or 60
    starts = [args.start] if args.start != ZERO else [ZERO, ONE, ONE + ZETA]
    parts = [calculus.tanaka_site_check(radius), calculus.tanaka_path_check(starts, T)]
    return _report(_merge("tanaka", parts), args)


def cmd_verify_martrep(args) -> int:
    T = 6 if args.t is None else args.t
    if not 1 <= T <= martrep.REPRESENTATION_CAP:
        raise UsageError(f"--t must lie in [1, {martrep.REPRESENTATION_CAP}]")
    grams = [martrep.gram_check(t) for t in range(0, min(T, martrep.GRAM_CAP) + 1)]
    funcs = [
        martrep.AdaptedFunctional.position(args.start),
        martrep.AdaptedFunctional.conj_position(args.start),
        martrep.AdaptedFunctional.radial(args.start),
        martrep.AdaptedFunctional.random(args.seed),
    ]
    reps = [martrep.representation_check(X, T) for X in funcs]
    merged = _merge(
        "martrep", grams + reps,
        gram_deviations=sum(r.n_violations for r in grams),
        reconstruction_violations=sum(r.n_violations for r in reps),
    )
    return _report(merged, args)


def cmd_verify_theorem(args) -> int:
    T = 9 if args.t is None else args.t
    if T > 12:
        raise UsageError("theorem cap: --t must be at most 12")
    radius = args.radius or 60
    parts = [per_site_bijection_check(radius), exhaustive_theorem_check(args.start, T)]
    return _report(_merge("theorem", parts, method="exhaustive plus per-site sufficient condition"), args)


def cmd_mc(args) -> int:
    cfg = _cfg(args, 100_000, 100)
    if cfg.trials < 1000:
        raise UsageError("mc needs --trials >= 1000")
    return _report(monte_carlo_check(cfg), args)


def cmd_scaling_probe(args) -> int:
    cfg = _cfg(args, 10_000, 10_000)
    if cfg.steps < 10_000:
        raise UsageError("scaling-probe needs --steps >= 10000")
    return _report(scaling_probe(cfg), args)


HANDLERS = {
    "simulate": cmd_simulate,
    "classify": cmd_classify,
    "norm": cmd_norm,
    "tables": cmd_tables,
    "verify-ito": cmd_verify_ito,
    "verify-tanaka": cmd_verify_tanaka,
    "verify-martrep": cmd_verify_martrep,
    "verify-theorem": cmd_verify_theorem,
    "mc": cmd_mc,
    "scaling-probe": cmd_scaling_probe,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return HANDLERS[args.command](args)
    except UsageError as e:
        print(f"pwalk {args.command}: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
