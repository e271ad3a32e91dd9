"""Command line interface.

Subcommands: objects, multiply, verify, table.  Exit codes: 0 success,
1 verification failure, 2 usage or parse error, 3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import Bounds, load_quiver_config
from .derived import DerivedCategory
from .errors import ConfigError, HallAlgError, ResourceBoundError
from .hall_classical import ClassicalHall
from .hall_derived import DerivedHall
from .labels import parse_label
from .reps import Heart
from .table import ConstantTable, header_for, read_table
from .verify import SUITES, graded_family, run_suite


def _parse_degrees(text):
    if text is None:
        return None
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ConfigError(f"--degrees expects 'a..b', got {text!r}")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise ConfigError(f"--degrees expects integers, got {text!r}")
    if hi < lo:
        return ()
    return tuple(range(lo, hi + 1))


def _add_common(sub):
    sub.add_argument("--quiver", required=True, help="quiver config file")
    sub.add_argument("--q", type=int, default=None,
                     help="field characteristic (overrides the config)")
    sub.add_argument("--max-dim", type=int, default=2, dest="max_dim",
                     help="dimension bound (total, or per degree in graded mode)")
    sub.add_argument("--degrees", default=None,
                     help="shift degree range 'a..b'; enables graded mode")
    sub.add_argument("--max-enum", type=int, default=None, dest="max_enum",
                     help="enumeration size cap (default 65536)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hallalg",
        description="Exact Hall algebra computations for quiver representations "
                    "over small prime fields.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p_obj = subs.add_parser("objects", help="list isomorphism classes with |Aut|")
    _add_common(p_obj)

    p_mul = subs.add_parser("multiply", help="expand a basis product")
    _add_common(p_mul)
    p_mul.add_argument("a_label")
    p_mul.add_argument("b_label")
    p_mul.add_argument("--mode", choices=("classical", "derived", "oracle"),
                       default="classical")

    p_ver = subs.add_parser("verify", help="run an identity verification suite")
    _add_common(p_ver)
    p_ver.add_argument("suite", choices=SUITES)
    p_ver.add_argument("--seed", type=int, default=0)

    p_tab = subs.add_parser("table", help="write a structure constant table")
    _add_common(p_tab)
    p_tab.add_argument("--mode", choices=("classical", "derived", "oracle"),
                       default="classical")
    p_tab.add_argument("--out", required=True, help="output path (also the cache)")
    return parser


def _load_heart(args):
    cfg = load_quiver_config(args.quiver)
    p = args.q if args.q is not None else cfg.p
    quiver = cfg.build_quiver()
    bounds = Bounds() if args.max_enum is None else Bounds(max_enum=args.max_enum)
    heart = Heart(quiver, p, bounds)
    return heart


def cmd_objects(args):
    heart = _load_heart(args)
    degrees = _parse_degrees(args.degrees)
    if degrees is None:
        for cls in heart.classes_up_to_dim(args.max_dim):
            print(f"{cls.label()}\t|Aut| = {heart.aut_order(cls)}")
    else:
        dcat = DerivedCategory(heart)
        objs = graded_family(dcat, degrees, args.max_dim)
        objs.sort(key=lambda g: (g.total_dim(), g.label()))
        for g in objs:
            print(f"{g.label()}\t|Aut| = {dcat.graded_aut_order(g)}")
    return 0


def _records_for_pair(heart, mode, x_label, y_label, algebras):
    classical, dhall = algebras
    if mode == "classical":
        x = parse_label(x_label, heart, graded=False)
        y = parse_label(y_label, heart, graded=False)
        prod = classical.product_classes(x, y)
    else:
        x = parse_label(x_label, heart, graded=True)
        y = parse_label(y_label, heart, graded=True)
        if mode == "derived":
            prod = dhall.product_objects(x, y)
        else:
            prod = dhall.oracle_product(x, y)
    return [
        (x.label(), y.label(), z.label(), coeff)
        for z, coeff in prod.sorted_items()
    ]


def _algebras(heart):
    dcat = DerivedCategory(heart)
    classical = ClassicalHall(heart)
    return classical, DerivedHall(dcat, classical)


def cmd_multiply(args):
    heart = _load_heart(args)
    records = _records_for_pair(
        heart, args.mode, args.a_label, args.b_label, _algebras(heart)
    )
    for x, y, z, val in sorted(records):
        print(f"{x} {y} {z} {val.numerator}/{val.denominator}")
    return 0


def cmd_verify(args):
    heart = _load_heart(args)
    degrees = _parse_degrees(args.degrees)
    report = run_suite(args.suite, heart, args.max_dim, degrees, args.seed)
    for line in report.lines:
        print(line)
    print(f"suite {report.suite}: {'PASS' if report.ok else 'FAIL'} "
          f"({report.checked} checks)")
    return 0 if report.ok else 1


def _basis_labels(heart, mode, max_dim, degrees):
    if mode == "classical":
        return [c.label() for c in heart.classes_up_to_dim(max_dim)]
    dcat = DerivedCategory(heart)
    degrees = degrees if degrees is not None else (0, 1)
    objs = graded_family(dcat, degrees, max_dim)
    objs.sort(key=lambda g: (g.total_dim(), g.label()))
    return [g.label() for g in objs]


def cmd_table(args):
    heart = _load_heart(args)
    degrees = _parse_degrees(args.degrees)
    header = header_for(heart.quiver, heart.p, args.mode, args.max_dim,
                        degrees, __version__)
    cached_pairs = {}
    try:
        existing = read_table(args.out)
    except ConfigError:
        existing = None
    if existing is not None and existing.compatible_with(header):
        cached_pairs = existing.by_pair()

    labels = (
        [] if args.max_dim < 0 else _basis_labels(heart, args.mode,
                                                  args.max_dim, degrees)
    )
    algebras = _algebras(heart)
    records = []
    for x_label in labels:
        for y_label in labels:
            if (x_label, y_label) in cached_pairs:
                for z_label, val in cached_pairs[(x_label, y_label)]:
                    records.append((x_label, y_label, z_label, val))
            else:
                records.extend(
                    _records_for_pair(heart, args.mode, x_label, y_label,
                                      algebras)
                )
    tab = ConstantTable(header, records)
    tab.write(args.out)
    print(f"wrote {len(records)} records for {len(labels)} basis labels "
          f"to {args.out}")
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "objects": cmd_objects,
        "multiply": cmd_multiply,
        "verify": cmd_verify,
        "table": cmd_table,
    }
    try:
        return handlers[args.command](args)
    except ResourceBoundError as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return 3
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HallAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
