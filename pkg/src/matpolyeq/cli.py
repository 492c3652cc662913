"""Command-line front end: solve, verify, detpoly, sample-variety, plant.

Exit codes: 0 success, 1 input/usage error, 2 no result, 3 verification
failure.  Data goes to stdout (or --output); errors go to stderr.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .errors import (
    DegreeZero,
    DocumentError,
    IdenticallySingular,
    InsufficientRoots,
    MatPolyEqError,
    NoPointsFound,
    NotSimultaneouslyDiagonalizable,
    TransformSingular,
)
from .instances import plant_instance
from .polymatrix import det_poly_univariate, fix_all_but, poly_roots, sample_variety
from .solver import (
    Diagnostic,
    Orientation,
    SolutionFamily,
    SolverConfig,
    commutation_check,
    sandwich_probe,
    solve_multivariate,
    solve_univariate,
    verify_residual,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_RESULT = 2
EXIT_VERIFY_FAILED = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the documented contract is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return EXIT_USAGE


def _parse_fix(text: str) -> list[complex]:
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            values.append(complex(part))
        except ValueError:
            raise DocumentError(f"--fix: cannot parse {part!r} as a complex number")
    return values


def _config_from(args) -> SolverConfig:
    return SolverConfig(
        tol_rank=args.tol_rank,
        tol_residual=args.tol_residual,
        max_classes=args.max_classes,
        sample_count=args.samples,
        seed=args.seed,
        strategy=args.strategy,
    )


def cmd_solve(args) -> int:
    try:
        eq = io.equation_from_document(io.load_document(args.input))
    except DocumentError as exc:
        return _fail(str(exc))
    if eq.orientation is Orientation.SANDWICH_BIVARIATE:
        return _fail("solve: the sandwich orientation has no constructive solver")
    try:
        cfg = _config_from(args)
    except ValueError as exc:
        return _fail(f"solve: {exc}")
    try:
        if eq.arity == 1:
            result = solve_univariate(eq, cfg)
        else:
            result = solve_multivariate(eq, cfg)
        families, diagnostics = result.families, result.diagnostics
    except IdenticallySingular as exc:
        return _fail(f"solve: IdenticallySingular: {exc}")
    except (NoPointsFound, TransformSingular, InsufficientRoots) as exc:
        diagnostics = list(exc.diagnostics) or [
            Diagnostic("solver", f"{type(exc).__name__}: {exc}")
        ]
        io.dump_document(io.solution_to_document([], diagnostics), args.output)
        return EXIT_NO_RESULT
    io.dump_document(io.solution_to_document(families, diagnostics), args.output)
    return EXIT_OK if families else EXIT_NO_RESULT


def cmd_verify(args) -> int:
    try:
        eq = io.equation_from_document(io.load_document(args.equation))
        families, _ = io.solution_from_document(
            io.load_document(args.solutions), eq.dim, eq.arity
        )
    except DocumentError as exc:
        return _fail(str(exc))
    report = []
    all_ok = True
    for k, family in enumerate(families):
        residual = verify_residual(eq, family.unknowns)
        entry = {
            "index": k,
            "residual": residual,
            "commutation": commutation_check(family.unknowns),
            "ok": residual <= args.tol,
        }
        if eq.orientation is Orientation.SANDWICH_BIVARIATE:
            try:
                probe = sandwich_probe(eq, family.unknowns[0], family.unknowns[1])
                entry["probe"] = [
                    {
                        "alpha": io.complex_to_pair(row.alpha),
                        "mu": io.complex_to_pair(row.mu),
                        "scalar_identity": row.scalar_identity,
                        "identity_scale": row.identity_scale,
                        "det_probe": row.det_probe,
                    }
                    for row in probe.rows
                ]
            except NotSimultaneouslyDiagonalizable as exc:
                entry["probe_error"] = str(exc)
        all_ok = all_ok and entry["ok"]
        report.append(entry)
    io.dump_document({"families": report, "all_ok": all_ok}, args.output)
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


def cmd_detpoly(args) -> int:
    try:
        eq = io.equation_from_document(io.load_document(args.input))
        fixed = _parse_fix(args.fix) if args.fix else []
    except DocumentError as exc:
        return _fail(str(exc))
    if eq.arity == 1:
        if fixed:
            return _fail("detpoly: a univariate equation takes no --fix values")
        slice_poly = eq.poly
    else:
        if len(fixed) != eq.arity - 1:
            return _fail(
                f"detpoly: need {eq.arity - 1} fixed values for arity {eq.arity},"
                f" got {len(fixed)}"
            )
        if not 0 <= args.pivot < eq.arity:
            return _fail(f"detpoly: pivot {args.pivot} out of range")
        slice_poly = fix_all_but(eq.poly, args.pivot, np.array(fixed))
    try:
        det = det_poly_univariate(slice_poly)
    except IdenticallySingular as exc:
        return _fail(f"detpoly: IdenticallySingular: {exc}")
    try:
        roots = poly_roots(det)
    except DegreeZero:
        roots = []
    io.dump_document(
        {
            "coefficients": [io.complex_to_pair(c) for c in det.coefficients],
            "roots": [
                {"value": io.complex_to_pair(root), "multiplicity": mult}
                for root, mult in roots
            ],
        },
        args.output,
    )
    return EXIT_OK


def cmd_sample_variety(args) -> int:
    try:
        eq = io.equation_from_document(io.load_document(args.input))
    except DocumentError as exc:
        return _fail(str(exc))
    if eq.arity < 2:
        return _fail("sample-variety: the equation must have arity >= 2")
    try:
        points = sample_variety(
            eq.poly, args.side, args.count, args.seed, args.strategy
        )
    except IdenticallySingular as exc:
        return _fail(f"sample-variety: IdenticallySingular: {exc}")
    except NoPointsFound as exc:
        print(f"sample-variety: {exc}", file=sys.stderr)
        return EXIT_NO_RESULT
    io.dump_document(
        {
            "points": [
                {
                    "values": io.vector_to_pairs(pt.values),
                    "null_vector": io.vector_to_pairs(pt.null_vector),
                    "side": pt.side,
                    "det_residual": pt.det_residual,
                }
                for pt in points
            ]
        },
        args.output,
    )
    return EXIT_OK


def cmd_plant(args) -> int:
    try:
        orientation = Orientation(args.orientation)
    except ValueError:
        return _fail(f"plant: invalid orientation {args.orientation!r}")
    try:
        planted = plant_instance(
            args.dimension, args.arity, args.degree, orientation, args.seed
        )
    except MatPolyEqError as exc:
        return _fail(f"plant: {exc}")
    eq = planted.equation
    io.dump_document(io.equation_to_document(eq), args.output)
    # the truth family mirrors solver output: W = T^-1 for left, T otherwise
    if orientation is Orientation.UNKNOWNS_LEFT:
        stored = np.linalg.inv(planted.truth_transform)
    else:
        stored = planted.truth_transform
    family = SolutionFamily(
        transform=stored,
        eigenvalues=[np.asarray(v) for v in planted.truth_eigenvalues],
        unknowns=planted.truth_unknowns,
        residual=verify_residual(eq, planted.truth_unknowns),
        transform_condition=float(np.linalg.cond(planted.truth_transform)),
    )
    io.dump_document(io.solution_to_document([family], []), args.truth)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="matpolyeq",
        description="Solve and probe structured matrix polynomial equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser(
        "solve", help="solve an equation document and write a solution document"
    )
    solve.add_argument("input", help="equation document (JSON)")
    solve.add_argument("--output", default=None, help="solution document path (default: stdout)")
    solve.add_argument("--tol-residual", type=float, default=1e-8, dest="tol_residual")
    solve.add_argument("--tol-rank", type=float, default=1e-10, dest="tol_rank")
    solve.add_argument("--max-classes", type=int, default=200, dest="max_classes")
    solve.add_argument("--samples", type=int, default=32)
    solve.add_argument("--seed", type=int, required=True)
    solve.add_argument("--strategy", choices=("grid", "random"), default="grid")
    solve.add_argument("--threads", type=int, default=0, help="parallelism bound (0 = auto)")
    solve.set_defaults(func=cmd_solve)

    verify = sub.add_parser(
        "verify", help="recompute residuals for a solution document against an equation"
    )
    verify.add_argument("equation", help="equation document (JSON)")
    verify.add_argument("solutions", help="solution document (JSON)")
    verify.add_argument("--tol", type=float, default=1e-8)
    verify.add_argument("--output", default=None)
    verify.set_defaults(func=cmd_verify)

    detpoly = sub.add_parser(
        "detpoly", help="determinant polynomial of a (sliced) equation, with roots"
    )
    detpoly.add_argument("input", help="equation document (JSON)")
    detpoly.add_argument("--pivot", type=int, default=0, help="free variable index")
    detpoly.add_argument(
        "--fix",
        default="",
        help="comma-separated complex values for the other variables, e.g. '1,0.5-2j'",
    )
    detpoly.add_argument("--output", default=None)
    detpoly.set_defaults(func=cmd_detpoly)

    sample = sub.add_parser(
        "sample-variety", help="sample zeros of the determinant polynomial"
    )
    sample.add_argument("input", help="equation document (JSON)")
    sample.add_argument("--count", type=int, default=8)
    sample.add_argument("--seed", type=int, required=True)
    sample.add_argument("--side", choices=("left", "right"), default="right")
    sample.add_argument("--strategy", choices=("grid", "random"), default="grid")
    sample.add_argument("--output", default=None)
    sample.set_defaults(func=cmd_sample_variety)

    plant = sub.add_parser(
        "plant", help="generate a planted equation plus its ground-truth solution"
    )
    plant.add_argument("--dimension", type=int, required=True)
    plant.add_argument("--arity", type=int, required=True)
    plant.add_argument("--degree", type=int, required=True)
    plant.add_argument(
        "--orientation", choices=("left", "right", "sandwich"), default="right"
    )
    plant.add_argument("--seed", type=int, required=True)
    plant.add_argument("--output", required=True, help="equation document path")
    plant.add_argument("--truth", required=True, help="truth solution document path")
    plant.set_defaults(func=cmd_plant)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except MatPolyEqError as exc:
        return _fail(f"{args.command}: {type(exc).__name__}: {exc}")


if __name__ == "__main__":
    raise SystemExit(main())
