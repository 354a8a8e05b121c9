"""Command-line interface.

Exit codes: 0 success, 1 failed verification, 2 usage or format error,
3 invalid state.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import geometry
from .exceptions import FormatError, InvalidStateError, OutsideTriangleError
from .io import csv_text, dumps, read_density, write_density
from .oracle import boundary_sweep, containment_test
from .statespace import SloccClass
from .twirl import coords_of_density, is_ghz_symmetric, twirl

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3

CLASS_NAMES = {
    SloccClass.SEPARABLE: "Separable",
    SloccClass.BISEPARABLE: "Biseparable",
    SloccClass.W: "W",
    SloccClass.GHZ: "GHZ",
}


class UsageError(Exception):
    pass


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def classification_result(rho, tol: float = geometry.DEFAULT_TOL) -> dict:
    """Witness result for a validated density matrix.

    The class read off the symmetrized image is exact when ``rho`` is
    itself GHZ-symmetric and otherwise a lower bound on the class of ``rho``.
    """
    c = coords_of_density(rho)
    sym = is_ghz_symmetric(rho, tol)
    cls = geometry.classify(c, tol)
    return {
        "x": c.x,
        "y": c.y,
        "slocc_lower_bound": CLASS_NAMES[cls],
        "ghz_symmetric": sym,
        "bound": "exact" if sym else "lower bound",
        "distances": geometry.boundary_margins(c),
    }


def cmd_classify(args) -> int:
    rho = read_density(args.input)
    _emit(dumps(classification_result(rho, args.tolerance)) + "\n", args.output)
    return EXIT_OK


def cmd_twirl(args) -> int:
    if not args.output:
        raise UsageError("twirl needs --output")
    rho = read_density(args.input)
    write_density(args.output, twirl(rho))
    return EXIT_OK


def boundary_rows(kind: str, samples: int):
    if samples < 2:
        raise UsageError("--samples must be at least 2")
    if kind == "w":
        v = np.linspace(0.0, 1.0, samples)
        x, y = geometry.w_curve(v)
        return ("v", "y", "x"), list(zip(v, y, x))
    ranges = {
        "sep": ((geometry.Y_SEP_JOIN, geometry.Y_MAX), geometry.x_sep),
        "sep-pure": ((0.0, geometry.Y_MAX), geometry.x_sep_pure),
        "bisep": ((geometry.Y_BISEP_JOIN, geometry.Y_MAX), geometry.x_bisep),
        "edge": ((geometry.Y_MIN, geometry.Y_MAX), geometry.x_edge),
    }
    (lo, hi), fn = ranges[kind]
    y = np.linspace(lo, hi, samples)
    return ("y", "x"), list(zip(y, fn(y)))


def cmd_boundary(args) -> int:
    header, rows = boundary_rows(args.class_, args.samples)
    _emit(csv_text(header, rows), args.output)
    return EXIT_OK


MAP_LABELS = {geometry.OUTSIDE: "outside", **{int(c): c.short for c in SloccClass}}


def class_map(xres: int, yres: int, tol: float = geometry.DEFAULT_TOL):
    """Classes at the cell centres of an ``xres`` x ``yres`` grid over the triangle's bounding box.

    Returns flattened ``(x, y, codes)``, y-major. Cell centres rather than
    edge-inclusive points keep class fractions within ~1e-5 of the true
    area fractions already at 400 x 400.
    """
    if xres < 2 or yres < 2:
        raise UsageError("--xres and --yres must be at least 2")
    xs = -0.5 + (np.arange(xres) + 0.5) / xres
    ys = geometry.Y_MIN + (np.arange(yres) + 0.5) * (geometry.Y_MAX - geometry.Y_MIN) / yres
    yy, xx = np.meshgrid(ys, xs, indexing="ij")
    codes = geometry.classify_points(xx, yy, tol)
    return xx.ravel(), yy.ravel(), codes.ravel()


def cmd_map(args) -> int:
    x, y, codes = class_map(args.xres, args.yres, args.tolerance)
    rows = [(a, b, MAP_LABELS[int(c)]) for a, b, c in zip(x, y, codes)]
    _emit(csv_text(("x", "y", "class"), rows), args.output)
    return EXIT_OK


def cmd_thresholds(args) -> int:
    t = geometry.solve_thresholds()
    out = {"p_sep": t.p_sep, "p_bisep": t.p_bisep, "p_w": t.p_w, "v_w": t.v_w}
    _emit(dumps(out, digits=12) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    cls = SloccClass.from_short(args.class_)
    if cls is SloccClass.GHZ:
        raise UsageError("verify applies to sep, bisep and w; the GHZ class has no outer boundary")
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    if args.mode == "containment":
        frac = containment_test(cls, args.samples, args.seed, args.tolerance)
        report = {
            "mode": "containment",
            "class": cls.short,
            "samples": args.samples,
            "seed": args.seed,
            "fraction": frac,
            "passed": frac == 1.0,
        }
    else:
        rows = boundary_sweep(cls, args.samples, seed=args.seed, restarts=args.restarts)
        report = {
            "mode": "boundary",
            "class": cls.short,
            "seed": args.seed,
            "points": rows,
            "passed": all(r["passed"] for r in rows),
        }
    _emit(dumps(report) + "\n", args.output)
    return EXIT_OK if report["passed"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ghzsym", description="SLOCC classes of GHZ-symmetric three-qubit states")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", help="output file (default: stdout)")
        sp.add_argument("--tolerance", type=float, default=geometry.DEFAULT_TOL)

    sp = sub.add_parser("classify", help="witness the SLOCC class of a density matrix")
    sp.add_argument("--input", required=True)
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("twirl", help="write the GHZ-symmetrized state")
    sp.add_argument("--input", required=True)
    common(sp)
    sp.set_defaults(func=cmd_twirl)

    sp = sub.add_parser("boundary", help="sample a class boundary as CSV")
    sp.add_argument("--class", dest="class_", required=True, choices=["sep", "sep-pure", "bisep", "w", "edge"])
    sp.add_argument("--samples", type=int, default=101)
    common(sp)
    sp.set_defaults(func=cmd_boundary)

    sp = sub.add_parser("map", help="class of every point on a grid, as CSV")
    sp.add_argument("--xres", type=int, default=400)
    sp.add_argument("--yres", type=int, default=400)
    common(sp)
    sp.set_defaults(func=cmd_map)

    sp = sub.add_parser("thresholds", help="Werner-line thresholds")
    common(sp)
    sp.set_defaults(func=cmd_thresholds)

    sp = sub.add_parser("verify", help="Monte-Carlo and optimization checks of the boundaries")
    sp.add_argument("--class", dest="class_", required=True, choices=["sep", "bisep", "w", "ghz"])
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=["containment", "boundary"], default="containment")
    sp.add_argument("--restarts", type=int, default=None, help="random restarts per height (boundary mode)")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ghzsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"ghzsym: malformed input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidStateError, OutsideTriangleError) as exc:
        print(f"ghzsym: invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
