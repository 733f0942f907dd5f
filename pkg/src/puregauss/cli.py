"""Command line front end.

Exit codes: 0 success, 1 domain failure (impure or unphysical state, residual
too large), 2 input or format failure.

Examples::

    puregauss make-state --family tms --r 1 --out tms.json
    puregauss validate tms.json
    puregauss measures tms.json --mode 2
    puregauss minimize tms.json --grid 151
    puregauss sweep --r-max 2.5 --steps 51 --out fig1.csv
"""
from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import geometry, measures, statefile
from .errors import PureGaussError, PurityError, StateFileError
from .states import (
    make_bisymmetric_three_mode,
    make_random_pure,
    make_schmidt_state,
    make_two_mode_squeezed,
    make_vacuum,
    validate,
)

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2
MINIMIZE_RESIDUAL_TOL = 1e-5
SWEEP_COLUMNS = ("r", "a", "D", "E_L", "tau_G", "E_V")


def _num(x) -> str:
    if isinstance(x, (bool, int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _print_labeled(values: dict) -> None:
    print(" ".join(f"{k}={_num(v)}" for k, v in values.items()))


def _load(path):
    try:
        return statefile.read_state(path)
    except StateFileError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None


def cmd_validate(args) -> int:
    cm = _load(args.path)
    if cm is None:
        return EXIT_INPUT
    report = validate(cm)
    print(" ".join(f"{k}={str(v).lower()}" for k, v in report._asdict().items()))
    return EXIT_OK if all(report) else EXIT_DOMAIN


def _minimize_kwargs(args) -> dict:
    return {"grid": args.grid, "refine_tol": args.refine_tol}


def cmd_measures(args) -> int:
    cm = _load(args.path)
    if cm is None:
        return EXIT_INPUT
    try:
        report = measures.measure_report(
            cm, args.mode, log_base=args.log_base, **_minimize_kwargs(args)
        )
    except PurityError:
        print("purity error: state is not pure", file=sys.stderr)
        return EXIT_DOMAIN
    except PureGaussError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _print_labeled(report.as_dict())
    return EXIT_OK


def cmd_minimize(args) -> int:
    cm = _load(args.path)
    if cm is None:
        return EXIT_INPUT
    try:
        result = geometry.minimize_distance(cm, args.mode, **_minimize_kwargs(args))
    except PurityError:
        print("purity error: state is not pure", file=sys.stderr)
        return EXIT_DOMAIN
    except PureGaussError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _print_labeled(
        {
            "d_min": result.d_min,
            "alpha": result.argmin_alpha,
            "beta": result.argmin_beta,
            "branch": result.argmin_branch,
            "closed_form_d": result.closed_form_d,
            "residual": result.residual,
            "evaluations": result.n_evaluations,
        }
    )
    return EXIT_OK if result.residual <= MINIMIZE_RESIDUAL_TOL else EXIT_DOMAIN


def sweep_rows(r_max: float, steps: int, grid: int = geometry.GRID_POINTS,
               refine_tol: float = geometry.REFINE_TOL, log_base: float = 2.0) -> list[dict]:
    """Measures of the two-mode squeezed vacuum for ``steps`` values of ``r`` in ``[0, r_max]``.

    ``D`` is obtained by numerical minimization, not from its closed form.
    """
    rows = []
    for r in np.linspace(0.0, r_max, steps):
        report = measures.measure_report(
            make_two_mode_squeezed(float(r)), 1, log_base=log_base,
            grid=grid, refine_tol=refine_tol,
        )
        rows.append(
            {
                "r": float(r),
                "a": report.a,
                "D": report.d,
                "E_L": report.e_linear,
                "tau_G": report.tau_gaussian,
                "E_V": report.e_von_neumann,
            }
        )
    return rows


def write_sweep_csv(rows, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([_num(row[c]) for c in SWEEP_COLUMNS])


def cmd_sweep(args) -> int:
    if not args.r_max > 0:
        print("error: --r-max must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.steps < 2:
        print("error: --steps must be >= 2", file=sys.stderr)
        return EXIT_INPUT
    rows = sweep_rows(args.r_max, args.steps, **_minimize_kwargs(args))
    if args.out is None:
        write_sweep_csv(rows, sys.stdout)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_sweep_csv(rows, fh)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def _build_state(args):
    family = args.family
    if family == "vacuum":
        return make_vacuum(args.n_modes)
    if family == "tms":
        return make_two_mode_squeezed(args.r)
    if family == "schmidt":
        return make_schmidt_state(args.a, args.n_modes)
    if family == "bisymmetric":
        return make_bisymmetric_three_mode(args.n_bar)
    return make_random_pure(args.n_modes, args.seed)


_FAMILY_PARAMS = {
    "vacuum": ("n_modes",),
    "tms": ("r",),
    "schmidt": ("a", "n_modes"),
    "bisymmetric": ("n_bar",),
    "random": ("n_modes", "seed"),
}


def cmd_make_state(args) -> int:
    for name in _FAMILY_PARAMS[args.family]:
        if getattr(args, name) is None:
            print(f"error: --{name.replace('_', '-')} is required for {args.family}",
                  file=sys.stderr)
            return EXIT_INPUT
    try:
        cm = _build_state(args)
    except PureGaussError as exc:
        print(f"error: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out is None:
        sys.stdout.write(statefile.dumps(cm))
        return EXIT_OK
    try:
        statefile.write_state(args.out, cm)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def _add_minimizer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", type=int, default=geometry.GRID_POINTS,
                   help="grid points per axis (default: %(default)s)")
    p.add_argument("--refine-tol", type=float, default=geometry.REFINE_TOL,
                   help="compass-search step floor (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puregauss",
        description="Geometric entanglement of pure Gaussian states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check symmetry, uncertainty relation and purity")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("measures", help="entanglement measures of one mode versus the rest")
    p.add_argument("path")
    p.add_argument("--mode", type=int, default=1, help="1-based mode (default: 1)")
    p.add_argument("--log-base", type=float, default=2.0,
                   help="logarithm base for E_V (default: 2)")
    _add_minimizer_flags(p)
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("minimize", help="numerically minimize the distance functional")
    p.add_argument("path")
    p.add_argument("--mode", type=int, default=1, help="1-based mode (default: 1)")
    _add_minimizer_flags(p)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("sweep", help="measures of the two-mode squeezed vacuum versus r")
    p.add_argument("--r-max", type=float, default=2.5)
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    _add_minimizer_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("make-state", help="write a state file from a factory")
    p.add_argument("--family", required=True, choices=sorted(_FAMILY_PARAMS))
    p.add_argument("--n-modes", type=int)
    p.add_argument("--r", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--n-bar", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_make_state)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
