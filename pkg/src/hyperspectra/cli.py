"""``hyperspectra`` command line.

Exit codes: 0 success, 1 bound violation, 2 input/parse error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import jsonfmt
from ._backend import BACKEND
from .bounds import BoundReport, full_report, resolve_weights
from .generators import (
    GenerationError,
    gen_complete,
    gen_disjoint_blocks,
    gen_hyperstar,
    gen_random,
    gen_random_regular,
)
from .hypergraph import Hypergraph, HypergraphError, blow_up
from .spectral import NumericalError, SolverOptions, spectral_radius
from .suite import DEFAULT_FAMILIES, FAMILIES, generate_cases, run_suite
from .tensor import TensorKind, WeightVector
from .uhg import UHGFormatError, load, write_uhg

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

_GEN_ARITY = {"hyperstar": 2, "complete": 2, "blocks": 2, "random": 3, "regular": 3, "blowup": 3}
_SEEDED = {"random", "regular", "blowup"}


class InputError(Exception):
    pass


def generate(spec: str, seed: int | None) -> Hypergraph:
    """Build a hypergraph from ``family:a,b[,c]``.

    Families: ``hyperstar:t,k``, ``complete:n,k``, ``blocks:t,r``,
    ``random:n,m,k``, ``regular:n,d,k`` and ``blowup:n0,d,r`` (blow-up of a
    random ``d``-regular r-uniform base). Random families need a seed.
    """
    family, _, rest = spec.partition(":")
    if family not in _GEN_ARITY:
        raise InputError(f"unknown generator {family!r}; choose from {', '.join(_GEN_ARITY)}")
    try:
        args = [int(a) for a in rest.split(",")] if rest else []
    except ValueError:
        raise InputError(f"generator arguments must be integers: {spec!r}") from None
    if len(args) != _GEN_ARITY[family]:
        raise InputError(f"{family} takes {_GEN_ARITY[family]} arguments, got {len(args)}")
    if family in _SEEDED and seed is None:
        raise InputError(f"{family} is random; pass --seed")
    try:
        if family == "hyperstar":
            return gen_hyperstar(*args)
        if family == "complete":
            return gen_complete(*args)
        if family == "blocks":
            return gen_disjoint_blocks(*args)
        if family == "random":
            return gen_random(*args, seed=seed)
        if family == "regular":
            return gen_random_regular(*args, seed=seed)
        return blow_up(gen_random_regular(*args, seed=seed))
    except GenerationError as exc:
        raise InputError(str(exc)) from None


def _options(args) -> SolverOptions:
    try:
        return SolverOptions(tolerance=args.tol, max_iterations=args.max_iters, shift=args.shift,
                             per_component=args.per_component, seed=args.seed or 0)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _input(args) -> Hypergraph:
    if (args.input is None) == (args.gen is None):
        raise InputError("give exactly one of --input PATH or --gen SPEC")
    if args.gen is not None:
        return generate(args.gen, args.seed)
    try:
        return load(args.input)
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    except UHGFormatError as exc:
        raise InputError(f"{args.input}: {exc}") from None


def _weights(args, H: Hypergraph):
    specs = args.weights or ["uniform", "degree"]
    out = []
    for spec in specs:
        if spec.startswith("file:"):
            path = spec[5:]
            try:
                vals = [float(line) for line in Path(path).read_text().split()]
                b = WeightVector(vals)
            except OSError as exc:
                raise InputError(f"cannot read weights {path}: {exc.strerror}") from None
            except ValueError as exc:
                raise InputError(f"bad weights file {path}: {exc}") from None
            if len(b) != H.n:
                raise InputError(f"weights file {path} has {len(b)} entries, expected {H.n}")
            out.append((spec, b))
        elif spec in ("uniform", "degree"):
            out.append(spec)
        else:
            raise InputError(f"--weights must be uniform, degree or file:PATH, not {spec!r}")
    for w in out:
        resolve_weights(H, w)
    return out


def _envelope(args, payload: dict) -> dict:
    head = {}
    if not args.no_timestamp:
        head["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    head["backend"] = BACKEND
    head.update(payload)
    return head


def _table(rows, headers) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _g(x) -> str:
    return "-" if x is None else f"{x:.12g}"


def _describe(H: Hypergraph) -> dict:
    return {"k": H.k, "n": H.n, "m": H.m}


def cmd_gen(args) -> int:
    H = generate(args.spec, args.seed)
    text = write_uhg(H)
    if args.out:
        Path(args.out).write_text(text)
        print(f"n={H.n} m={H.m} k={H.k} -> {args.out}")
    else:
        sys.stdout.write(text)
        print(f"n={H.n} m={H.m} k={H.k}", file=sys.stderr)
    return EXIT_OK


def cmd_spectral(args) -> int:
    H = _input(args)
    opts = _options(args)
    kinds = [TensorKind.ADJACENCY, TensorKind.SIGNLESS_LAPLACIAN]
    if args.kind != "both":
        kinds = [TensorKind.parse(args.kind)]
    try:
        ests = [spectral_radius(H, kind, opts) for kind in kinds]
    except NumericalError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        payload = {"hypergraph": _describe(H), "options": opts.as_dict(),
                   "spectral": {e.kind.value: e.as_dict() for e in ests}}
        sys.stdout.write(jsonfmt.dumps(_envelope(args, payload)))
    else:
        print(f"{H}  backend={BACKEND}")
        rows = [(e.kind.value, _g(e.lo), _g(e.hi), _g(e.estimate), e.iterations,
                 f"{e.residual:.2e}", e.converged) for e in ests]
        print(_table(rows, ["kind", "lo", "hi", "estimate", "iters", "residual", "converged"]))
    if not all(e.converged for e in ests):
        print("solver did not converge within --max-iters", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _print_report(H: Hypergraph, report: BoundReport) -> None:
    print(f"{H}  connected={report.connected}  class={report.classification}  backend={BACKEND}")
    for label, est in (("rho(A)", report.spectral_adj), ("rho(Q)", report.spectral_q)):
        if est is not None:
            print(f"{label} in [{est.lo:.15g}, {est.hi:.15g}]  ({est.iterations} iterations)")
    # sharpest bound first
    entries = sorted(report.entries.values(),
                     key=lambda e: (e.slack is None, e.slack if e.slack is not None else 0.0, e.name))
    rows = [(e.name, e.direction, _g(e.value), _g(e.slack), "yes" if e.applicable else "no",
             "yes" if e.predicted_equality else "", _g(e.component_value)) for e in entries]
    print(_table(rows, ["bound", "dir", "value", "slack", "applicable", "equality", "per-component"]))
    failed = report.failed_checks
    print(f"checks: {len(report.checks) - len(failed)}/{len(report.checks)} passed")


def _report(args):
    H = _input(args)
    opts = _options(args)
    report = full_report(H, opts, _weights(args, H))
    if args.json:
        payload = {"hypergraph": _describe(H), "report": report.as_dict()}
        sys.stdout.write(jsonfmt.dumps(_envelope(args, payload)))
    else:
        _print_report(H, report)
    return report


def _exit_for(report: BoundReport) -> int:
    for msg in report.numeric_failures:
        print(f"numeric failure: {msg}", file=sys.stderr)
    for c in report.failed_checks:
        print(f"violated {c.name}: {c.detail}", file=sys.stderr)
    if report.numeric_failures:
        return EXIT_NUMERIC
    return EXIT_VIOLATION if report.failed_checks else EXIT_OK


def cmd_bounds(args) -> int:
    report = _report(args)
    return EXIT_NUMERIC if report.numeric_failures else EXIT_OK


def cmd_verify(args) -> int:
    return _exit_for(_report(args))


def cmd_suite(args) -> int:
    if args.seed is None:
        raise InputError("suite is random; pass --seed")
    try:
        ks = [int(k) for k in args.k.split(",")]
        families = args.families.split(",")
        cases = generate_cases(args.n_cases, args.seed, max_n=args.max_n, ks=ks, max_m=args.max_m,
                               families=families, connected_only=args.connected_only)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    opts = _options(args)
    if args.weights and any(w.startswith("file:") for w in args.weights):
        raise InputError("file weights are per-instance; suite accepts uniform and degree only")
    result = run_suite(cases, opts, args.weights or None, jobs=args.jobs)
    if args.json:
        sys.stdout.write(jsonfmt.dumps(_envelope(args, result.as_dict())))
    else:
        print(f"{result.n_passed}/{len(cases)} instances passed  backend={BACKEND}")
        rows = sorted(((name, result.applicable_counts[name], _g(result.worst_slack.get(name)))
                       for name in result.applicable_counts), key=lambda r: r[0])
        print(_table(rows, ["bound", "applicable", "worst slack"]))
    numeric = False
    for (label, _), r in zip(cases, result.reports):
        for msg in r.numeric_failures:
            numeric = True
            print(f"{label}: numeric failure: {msg}", file=sys.stderr)
        for c in r.failed_checks:
            print(f"{label}: violated {c.name}: {c.detail}", file=sys.stderr)
    if numeric:
        return EXIT_NUMERIC
    return EXIT_OK if result.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperspectra",
        description="Spectral radii and degree bounds for uniform hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--tol", type=float, default=1e-10, help="bracket width (default 1e-10)")
    solver.add_argument("--max-iters", type=int, default=200_000)
    solver.add_argument("--shift", type=float, default=1.0, help="diagonal shift (default 1.0)")
    solver.add_argument("--seed", type=int, default=None)
    solver.add_argument("--per-component", action=argparse.BooleanOptionalAction, default=True,
                        help="solve disconnected inputs blockwise")
    solver.add_argument("--weights", action="append", metavar="uniform|degree|file:PATH",
                        help="weight choice for the weighted Q bound; repeatable "
                             "(default: uniform and degree)")
    solver.add_argument("--json", action="store_true", help="emit JSON")
    solver.add_argument("--no-timestamp", action="store_true", help="omit generated_at from JSON")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--input", metavar="PATH", help=".uhg file")
    source.add_argument("--gen", metavar="SPEC", help="generator spec instead of a file")

    p = sub.add_parser("gen", help="write a generated hypergraph as .uhg")
    p.add_argument("spec", help="hyperstar:t,k | complete:n,k | blocks:t,r | random:n,m,k | "
                                "regular:n,d,k | blowup:n0,d,r")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("spectral", parents=[solver, source], help="spectral radii")
    p.add_argument("--kind", choices=["adjacency", "signless_laplacian", "both"], default="both")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("bounds", parents=[solver, source], help="all bounds with slacks")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", parents=[solver, source],
                       help="exit 0 iff every applicable bound and predicted equality holds")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", parents=[solver], help="verify a seeded batch of instances")
    p.add_argument("n_cases", type=int)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--max-m", type=int, default=40)
    p.add_argument("--k", default="2,3,4", help="comma-separated uniformities")
    p.add_argument("--families", default=",".join(DEFAULT_FAMILIES),
                   help=f"comma-separated subset of {','.join(FAMILIES)}")
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, HypergraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
