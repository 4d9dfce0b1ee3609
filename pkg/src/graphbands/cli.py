"""Command line interface.

Subcommands: validate, scattering, bands, density, torus, reference.
All numeric output is CSV with 17 significant digits, so runs are
byte-reproducible given the same arguments, input file and seeds.
Exit codes: 0 success, 1 invalid input or computation failure, 2 usage.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bond_system import bond_matrices
from .graph_model import (FundamentalCell, GraphError, bind_lengths,
                          bloch_reduce, load_graph, validate_cell,
                          with_random_lengths)
from .reference_models import (InteriorResonanceError, dihedral_density,
                               lasso_reference_density)
from .spectrum import band_intervals, density
from .torus import mc_volume

USAGE_EXIT = 2
FAILURE_EXIT = 1


def _fmt(x) -> str:
    return "%.17g" % x


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("%r is not a number" % text)
    if not np.isfinite(v) or v <= 0:
        raise argparse.ArgumentTypeError("value must be positive, got %r" % text)
    return v


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("%r is not an integer" % text)
    if v < 1:
        raise argparse.ArgumentTypeError("value must be at least 1, got %r" % text)
    return v


def _length_list(text):
    try:
        values = [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("lengths must be comma-separated numbers")
    if not values:
        raise argparse.ArgumentTypeError("empty length list")
    return values


def _add_length_options(p):
    p.add_argument("--lengths", type=_length_list, default=None,
                   help="override edge lengths, comma separated, edge order")
    p.add_argument("--random-lengths", action="store_true",
                   help="bind uniform [1, 2] lengths drawn with --seed")


def _add_common(p, seed_help="seed for random draws"):
    p.add_argument("--seed", type=int, default=0, help=seed_help)
    p.add_argument("--threads", type=_positive_int, default=None,
                   help="worker threads for batched evaluation")
    p.add_argument("-o", "--output", default=None,
                   help="write CSV here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphbands",
        description="Band structure and band density of periodic metric graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a graph file and report violations")
    p.add_argument("file")

    p = sub.add_parser("scattering",
                       help="dump the bond scattering matrix, lengths and flux")
    p.add_argument("file")
    _add_length_options(p)
    _add_common(p)

    p = sub.add_parser("bands", help="band intervals in [0, kmax]")
    p.add_argument("file")
    p.add_argument("--kmax", type=_positive_float, required=True)
    p.add_argument("--grid-step", type=_positive_float, default=None,
                   help="membership scan step (default pi / (8 total length))")
    p.add_argument("--bisect-tol", type=_positive_float, default=None,
                   help="band edge tolerance (default 1e-10 max(1, kmax))")
    _add_length_options(p)
    _add_common(p)

    p = sub.add_parser("density",
                       help="band density with geometric convergence checkpoints")
    p.add_argument("file")
    p.add_argument("--kmax", type=_positive_float, required=True)
    p.add_argument("--checkpoints", type=_positive_int, default=16)
    p.add_argument("--grid-step", type=_positive_float, default=None)
    p.add_argument("--bisect-tol", type=_positive_float, default=None)
    _add_length_options(p)
    _add_common(p)

    p = sub.add_parser("torus",
                       help="Monte Carlo torus volume of the band set")
    p.add_argument("file")
    p.add_argument("--samples", type=_positive_int, required=True)
    _add_length_options(p)
    _add_common(p, seed_help="seed for sampling (and random lengths if asked)")

    p = sub.add_parser("reference", help="closed-form reference band densities")
    ref = p.add_subparsers(dest="model", required=True)
    q = ref.add_parser("lasso", help="loop-with-pendant density by quadrature")
    q.add_argument("-o", "--output", default=None)
    q = ref.add_parser("dihedral", help="dihedral graph density by Monte Carlo")
    q.add_argument("--samples", type=_positive_int, default=10_000_000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("-o", "--output", default=None)

    return parser


def _load_magnetic(args):
    obj = load_graph(args.file)
    if isinstance(obj, FundamentalCell):
        report = validate_cell(obj)
        if report:
            raise GraphError(report)
        obj = bloch_reduce(obj)
    if getattr(args, "lengths", None) is not None:
        obj = bind_lengths(obj, args.lengths)
    elif getattr(args, "random_lengths", False):
        obj = with_random_lengths(obj, args.seed)
    elif not obj.is_bound:
        raise GraphError("graph has unbound length slots; "
                         "pass --lengths or --random-lengths")
    return obj


def _emit(args, lines):
    text = "\n".join(lines) + "\n"
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_validate(args) -> int:
    obj = load_graph(args.file)
    if isinstance(obj, FundamentalCell):
        report = validate_cell(obj)
        if report:
            for line in report:
                print("violation: %s" % line, file=sys.stderr)
            return FAILURE_EXIT
        reduced = bloch_reduce(obj)
        print("OK: cell with %d vertices, %d edges, %d generators; "
              "reduces to %d edges"
              % (len(obj.vertices), len(obj.edges), obj.generators,
                 reduced.edge_count))
        return 0
    print("OK: magnetic graph with %d vertices, %d edges, %d generators"
          % (len(obj.vertices), obj.edge_count, obj.generators))
    return 0


def _cmd_scattering(args) -> int:
    g = _load_magnetic(args)
    bs = bond_matrices(g)
    lines = ["# scattering matrix (%d x %d)" % bs.scattering.shape]
    lines += [",".join(_fmt(x) for x in row) for row in bs.scattering]
    lines.append("# bond lengths")
    lines.append(",".join(_fmt(x) for x in bs.bond_lengths))
    lines.append("# bond flux (%d x %d)" % bs.bond_flux.shape)
    lines += [",".join("%d" % f for f in row) for row in bs.bond_flux]
    _emit(args, lines)
    return 0


def _cmd_bands(args) -> int:
    g = _load_magnetic(args)
    bs = bond_matrices(g)
    result = band_intervals(bs, args.kmax, grid_step=args.grid_step,
                            bisect_tol=args.bisect_tol, threads=args.threads)
    _emit(args, ["%s,%s" % (_fmt(b.lo), _fmt(b.hi)) for b in result.bands])
    return 0


def _cmd_density(args) -> int:
    g = _load_magnetic(args)
    bs = bond_matrices(g)
    series = density(bs, args.kmax, checkpoints=args.checkpoints,
                     grid_step=args.grid_step, bisect_tol=args.bisect_tol,
                     threads=args.threads)
    _emit(args, ["%s,%s" % (_fmt(k), _fmt(v))
                 for k, v in zip(series.cutoffs, series.values)])
    return 0


def _cmd_torus(args) -> int:
    g = _load_magnetic(args)
    bs = bond_matrices(g)
    est = mc_volume(bs, args.samples, args.seed, threads=args.threads)
    _emit(args, ["%s,%s,%d,%d" % (_fmt(est.value), _fmt(est.std_error),
                                  est.samples, est.seed)])
    return 0


def _cmd_reference(args) -> int:
    if args.model == "lasso":
        ref = lasso_reference_density()
    else:
        ref = dihedral_density(args.samples, args.seed)
    _emit(args, ["%s,%s" % (_fmt(ref.value), _fmt(ref.error_bound))])
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "scattering": _cmd_scattering,
    "bands": _cmd_bands,
    "density": _cmd_density,
    "torus": _cmd_torus,
    "reference": _cmd_reference,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except GraphError as exc:
        for line in exc.violations:
            print("error: %s" % line, file=sys.stderr)
        return FAILURE_EXIT
    except InteriorResonanceError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return FAILURE_EXIT
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return FAILURE_EXIT


def main() -> None:
    sys.exit(run())
