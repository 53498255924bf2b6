"""Command-line front end.

Subcommands: gap (exact shifted/unshifted gap of one velocity vector),
verify (certify an upper bound from explicit starting shifts), sweep
(batch gaps over all sorted primitive vectors up to a sum bound), table
(gamma_min(1..n) for a range of n), and zonolab (vector-configuration and
zonotope utilities, JSON in/out).

Exit codes: 0 success / certified, 1 verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, localcontext
from functools import partial, reduce
from math import gcd
from multiprocessing import Pool

from .exact import (
    HALF,
    Interval,
    NonPrimitiveError,
    Rational,
    format_rational,
    parse_rational,
)
from .runner import (
    canonical_shift,
    danger_intervals,
    gamma_at,
    greedy_interval_cover,
    verify_gap_upper_bound,
)
from .decider import minimizing_shift, shifted_gap
from . import zonolab

MAX_TABLE_N = 9  # n = 10 and beyond is out of desk-scale reach

DECIMAL_DIGITS = 15


def decimal_string(q) -> str:
    """Correctly rounded decimal with 15 significant digits, display only."""
    q = Rational(q)
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        return str(Decimal(int(q.numerator)) / Decimal(int(q.denominator)))


def classify(gap, n: int) -> str:
    bound = Rational(1, n + 1)
    if gap < bound:
        return "BelowBound"
    if gap == bound:
        return "AtBound"
    return "AboveBound"


# ---------------------------------------------------------------------------
# gap
# ---------------------------------------------------------------------------


def _witness_at(vec, gamma):
    """Shift vector attaining gap <= gamma, with its exact gap value.

    At gamma == gamma_min the strict cover fails exactly at the optimal
    parameter points, so the witness attains the minimum.
    """
    shifts = minimizing_shift(vec, gamma)
    return shifts, gamma_at(vec, shifts)


def cmd_gap(args) -> int:
    vec = tuple(args.v)
    if args.unshifted:
        value = gamma_at(vec, [0] * len(vec))
        print(f"gamma({' '.join(map(str, vec))}; s=0) = {format_rational(value)}")
        print(f"reciprocal = {decimal_string(1 / value)}")
        return 0
    result = shifted_gap(vec, max_denominator=args.max_denominator)
    if isinstance(result, Interval):
        print(
            f"gamma_min({' '.join(map(str, vec))}) in "
            f"({format_rational(result.lo)}, {format_rational(result.hi)})"
        )
        print("denominator cap reached before an exact value; raise --max-denominator")
        if args.witness:
            shifts, value = _witness_at(vec, result.hi)
            print("witness s =", " ".join(format_rational(s) for s in shifts))
            print(f"gamma_at(witness) = {format_rational(value)}")
        return 0
    print(f"gamma_min({' '.join(map(str, vec))}) = {format_rational(result)}")
    print(f"reciprocal = {decimal_string(1 / result)}")
    if args.witness:
        if result >= HALF:
            print("witness: none (gap is 1/2, no shift does better)")
        else:
            shifts, value = _witness_at(vec, result)
            print("witness s =", " ".join(format_rational(s) for s in shifts))
            print(f"gamma_at(witness) = {format_rational(value)}")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    vec = tuple(args.v)
    shifts = [parse_rational(s) for s in args.shifts]
    gamma = parse_rational(args.gamma)
    covered = verify_gap_upper_bound(vec, shifts, gamma)
    intervals = sorted(set(danger_intervals(vec, shifts, gamma)))
    print(
        f"# certificate: {len(intervals)} closed intervals to cover [0, 1] "
        f"at gamma = {format_rational(gamma)}"
    )
    for a, b in intervals:
        print(f"[{format_rational(a)}, {format_rational(b)}]")
    if covered:
        print(f"certified: gamma(v; s) <= {format_rational(gamma)}")
        return 0
    hole = greedy_interval_cover(intervals, (Rational(0), Rational(1)))
    print(
        f"NOT certified: uncovered times in "
        f"({format_rational(hole[0])}, {format_rational(hole[1])})"
    )
    return 1


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def sweep_vectors(n: int, max_sum: int) -> list[tuple[int, ...]]:
    """All strictly increasing primitive velocity vectors of length n, sum bound."""
    out: list[tuple[int, ...]] = []

    def extend(prefix, budget):
        k = len(prefix)
        if k == n:
            if reduce(gcd, prefix) == 1:
                out.append(tuple(prefix))
            return
        m = n - k
        lo = prefix[-1] + 1 if prefix else 1
        # smallest possible tail: lo, lo+1, ..., lo+m-1
        while m * lo + m * (m - 1) // 2 <= budget:
            extend(prefix + [lo], budget - lo)
            lo += 1

    extend([], max_sum)
    return out


def _sweep_record(v: tuple[int, ...], max_denominator) -> dict:
    gap = shifted_gap(v, max_denominator=max_denominator)
    if isinstance(gap, Interval):
        raise RuntimeError(
            f"gap search for {v} hit the denominator cap; raise --max-denominator"
        )
    return {
        "n": len(v),
        "v": " ".join(map(str, v)),
        "gap_num": int(gap.numerator),
        "gap_den": int(gap.denominator),
        "gap": format_rational(gap),
        "gap_decimal": decimal_string(gap),
        "classification": classify(gap, len(v)),
    }


def _sorted_records(records: list[dict]) -> list[dict]:
    def key(rec):
        return (
            Rational(rec["gap_num"], rec["gap_den"]),
            tuple(int(x) for x in rec["v"].split()),
        )

    return sorted(records, key=key)


def _render_sweep_csv(records, footer) -> str:
    lines = ["n,v,gap,gap_decimal,classification"]
    for rec in records:
        lines.append(
            f"{rec['n']},{rec['v']},{rec['gap']},"
            f"{rec['gap_decimal']},{rec['classification']}"
        )
    lines.append(
        f"# footer below_bound={footer['below_bound']} "
        f"at_bound={footer['at_bound']} records={footer['records']}"
    )
    return "\n".join(lines) + "\n"


def _render_sweep_json(n, max_sum, records, footer) -> str:
    public = [
        {k: rec[k] for k in ("n", "v", "gap", "gap_decimal", "classification")}
        for rec in records
    ]
    doc = {"n": n, "max_sum": max_sum, "records": public, "footer": footer}
    return json.dumps(doc, indent=2) + "\n"


def run_sweep(n, max_sum, jobs=1, max_denominator=None):
    """Compute all sweep records, already sorted; returns (records, footer)."""
    vectors = sweep_vectors(n, max_sum)
    worker = partial(_sweep_record, max_denominator=max_denominator)
    if jobs > 1 and len(vectors) > 1:
        with Pool(processes=jobs) as pool:
            records = pool.map(worker, vectors, chunksize=8)
    else:
        records = [worker(v) for v in vectors]
    records = _sorted_records(records)
    footer = {
        "below_bound": sum(r["classification"] == "BelowBound" for r in records),
        "at_bound": sum(r["classification"] == "AtBound" for r in records),
        "records": len(records),
    }
    return records, footer


def cmd_sweep(args) -> int:
    if args.n < 1:
        raise ValueError("n must be positive")
    records, footer = run_sweep(
        args.n, args.max_sum, jobs=args.jobs, max_denominator=args.max_denominator
    )
    if args.format == "csv":
        text = _render_sweep_csv(records, footer)
    else:
        text = _render_sweep_json(args.n, args.max_sum, records, footer)
    if args.output is None or args.output == "-":
        sys.stdout.write(text)
        return 0
    tmp_path = args.output + ".tmp"
    try:
        with open(tmp_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp_path, args.output)
    except OSError as exc:
        for path in (tmp_path, args.output):
            try:
                os.unlink(path)
            except OSError:
                pass
        print(f"error: could not write {args.output}: {exc}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def cmd_table(args) -> int:
    if not 2 <= args.max_n <= MAX_TABLE_N:
        raise ValueError(f"max_n must be between 2 and {MAX_TABLE_N}")
    print("n  gamma_min  reciprocal")
    for n in range(2, args.max_n + 1):
        vec = tuple(range(1, n + 1))
        gap = shifted_gap(vec, max_denominator=args.max_denominator)
        if isinstance(gap, Interval):
            print(
                f"{n}  ({format_rational(gap.lo)}, {format_rational(gap.hi)})  "
                "(cap reached)"
            )
            continue
        print(f"{n}  {format_rational(gap)}  {decimal_string(1 / gap)}")
    return 0


# ---------------------------------------------------------------------------
# zonolab
# ---------------------------------------------------------------------------


def _load_config(args) -> zonolab.VectorConfiguration:
    if getattr(args, "config", None):
        if args.config == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.config, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        return zonolab.config_from_json_dict(data)
    if getattr(args, "lr", None):
        config, _ = zonolab.lr_zonotope(tuple(args.lr))
        return config
    if getattr(args, "rectangle", None):
        return zonolab.rectangle_config(*args.rectangle)
    if getattr(args, "disk", None) is not None:
        return zonolab.triangular_disk_config(args.disk)
    raise ValueError("no configuration source given")


def _standard_lattice(dim: int) -> zonolab.LatticeDescription:
    return zonolab.LatticeDescription(dim=dim, q=1, w=tuple([0] * dim))


def _body_and_lattice(args):
    if getattr(args, "cusick", None) is not None:
        return zonolab.cusick_parallelepiped(args.cusick)
    if getattr(args, "almost_coloopless", None) is not None:
        body, lattice, _ = zonolab.almost_coloopless_zonotope(args.almost_coloopless)
        return body, lattice
    if getattr(args, "lr", None):
        _, body = zonolab.lr_zonotope(tuple(args.lr))
        return body, _standard_lattice(body.dim)
    raise ValueError("no body source given (--cusick, --almost-coloopless or --lr)")


def _emit(value) -> int:
    print(json.dumps(value))
    return 0


def cmd_zonolab(args) -> int:
    sub = args.zonolab_command
    if sub == "gale":
        return _emit(zonolab.gale_dual(_load_config(args)).to_json_dict())
    if sub == "cosimple":
        config = _load_config(args)
        return _emit(
            {
                "coloopless": zonolab.is_coloopless(config),
                "cosimple": zonolab.is_cosimple(config),
            }
        )
    if sub == "lvp":
        config = _load_config(args)
        if args.symmetric:
            return _emit(zonolab.has_lvp_symmetric(config))
        return _emit(zonolab.has_lvp(config))
    if sub == "rectangle":
        return _emit(zonolab.rectangle_config(*args.ab).to_json_dict())
    if sub == "cusick":
        body, lattice = zonolab.cusick_parallelepiped(args.q)
        return _emit({"dim": lattice.dim, "lattice": lattice.to_json_dict()})
    if sub == "almost-coloopless":
        body, lattice, config = zonolab.almost_coloopless_zonotope(args.d)
        return _emit(
            {"lattice": lattice.to_json_dict(), "config": config.to_json_dict()}
        )
    if sub == "kappa":
        body, lattice = _body_and_lattice(args)
        return _emit(format_rational(zonolab.first_c_minimum(body, lattice)))
    if sub == "width":
        if args.functional:
            config = _load_config(args)
            return _emit(zonolab.width_with_functional(config, args.functional))
        if getattr(args, "cusick", None) is not None:
            _, lattice = zonolab.cusick_parallelepiped(args.cusick)
            d = lattice.dim
            config = zonolab.VectorConfiguration.from_vectors(
                [tuple(int(i == j) for j in range(d)) for i in range(d)]
            )
        elif getattr(args, "almost_coloopless", None) is not None:
            _, lattice, config = zonolab.almost_coloopless_zonotope(
                args.almost_coloopless
            )
        else:
            config = _load_config(args)
            lattice = _standard_lattice(config.dim)
        result = zonolab.lattice_width_upto(config, lattice, args.bound)
        if isinstance(result, zonolab.Exactly):
            return _emit({"exactly": result.width})
        return _emit({"greater_than": result.bound})
    if sub == "count":
        return _emit(zonolab.lattice_point_count(tuple(args.v)))
    raise ValueError(f"unknown zonolab subcommand {sub!r}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_max_denominator(parser):
    parser.add_argument(
        "--max-denominator",
        type=int,
        default=None,
        metavar="D",
        help="Stern-Brocot denominator cap (default 16 * (prod v)^2)",
    )


def _add_config_sources(parser, lr=True, config=True, rectangle=False, disk=False):
    group = parser.add_mutually_exclusive_group(required=True)
    if config:
        group.add_argument(
            "--config",
            metavar="PATH",
            help="JSON configuration document ('-' for stdin)",
        )
    if lr:
        group.add_argument(
            "--lr",
            type=int,
            nargs="+",
            metavar="V",
            help="generators of the LR zonotope of this velocity vector",
        )
    if rectangle:
        group.add_argument(
            "--rectangle",
            type=int,
            nargs=2,
            metavar=("A", "B"),
            help="half the lattice points of [-A,A]x[-B,B], no zero",
        )
    if disk:
        group.add_argument(
            "--disk",
            type=int,
            metavar="R2",
            help="triangular-lattice vectors of squared norm <= R2",
        )
    return group


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lonelyrunner",
        description="Exact shifted lonely runner gaps and lattice-zonotope tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gap = sub.add_parser("gap", help="exact gamma_min(v), or gamma(v; 0)")
    p_gap.add_argument("v", type=int, nargs="+", help="velocity vector")
    p_gap.add_argument(
        "--unshifted",
        action="store_true",
        help="compute the unshifted gap gamma(v; s=0) instead",
    )
    p_gap.add_argument(
        "--witness",
        action="store_true",
        help="also print a shift vector attaining (or approaching) the gap",
    )
    _add_max_denominator(p_gap)
    p_gap.set_defaults(handler=cmd_gap)

    p_verify = sub.add_parser(
        "verify", help="certify gamma(v; s) <= gamma from explicit shifts"
    )
    p_verify.add_argument("v", type=int, nargs="+", help="velocity vector")
    p_verify.add_argument(
        "--shifts",
        nargs="+",
        required=True,
        metavar="S",
        help="starting shifts, rationals like 46/94",
    )
    p_verify.add_argument(
        "--gamma", required=True, metavar="G", help="claimed upper bound, p/q"
    )
    p_verify.set_defaults(handler=cmd_verify)

    p_sweep = sub.add_parser(
        "sweep", help="gaps of all sorted primitive vectors with a sum bound"
    )
    p_sweep.add_argument("-n", type=int, required=True, help="number of runners")
    p_sweep.add_argument(
        "--max-sum", type=int, required=True, metavar="S", help="bound on sum(v)"
    )
    p_sweep.add_argument(
        "--jobs", type=int, default=1, metavar="J", help="parallel worker processes"
    )
    p_sweep.add_argument(
        "--output", metavar="PATH", help="output file (default stdout)"
    )
    p_sweep.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )
    _add_max_denominator(p_sweep)
    p_sweep.set_defaults(handler=cmd_sweep)

    p_table = sub.add_parser("table", help="gamma_min(1..n) for n = 2..max_n")
    p_table.add_argument("max_n", type=int, help=f"last n, at most {MAX_TABLE_N}")
    _add_max_denominator(p_table)
    p_table.set_defaults(handler=cmd_table)

    p_zono = sub.add_parser("zonolab", help="vector-configuration utilities (JSON)")
    zsub = p_zono.add_subparsers(dest="zonolab_command", required=True)

    z_gale = zsub.add_parser("gale", help="Gale dual of a configuration")
    _add_config_sources(z_gale)
    z_gale.set_defaults(handler=cmd_zonolab)

    z_cosimple = zsub.add_parser(
        "cosimple", help="coloopless / cosimple tests for a configuration"
    )
    _add_config_sources(z_cosimple)
    z_cosimple.set_defaults(handler=cmd_zonolab)

    z_lvp = zsub.add_parser("lvp", help="Lonely Vector Property of a configuration")
    _add_config_sources(z_lvp, rectangle=True, disk=True)
    z_lvp.add_argument(
        "--symmetric",
        action="store_true",
        help="use the symmetric sum criterion instead of the doubled one",
    )
    z_lvp.set_defaults(handler=cmd_zonolab)

    z_rect = zsub.add_parser("rectangle", help="rectangle configuration as JSON")
    z_rect.add_argument("ab", type=int, nargs=2, metavar=("A", "B"))
    z_rect.set_defaults(handler=cmd_zonolab)

    z_cusick = zsub.add_parser(
        "cusick", help="Cusick parallelepiped lattice for modulus q"
    )
    z_cusick.add_argument("q", type=int)
    z_cusick.set_defaults(handler=cmd_zonolab)

    z_almost = zsub.add_parser(
        "almost-coloopless", help="almost-coloopless zonotope for odd prime d"
    )
    z_almost.add_argument("d", type=int)
    z_almost.set_defaults(handler=cmd_zonolab)

    z_kappa = zsub.add_parser("kappa", help="first c-minimum of a construction")
    kgroup = z_kappa.add_mutually_exclusive_group(required=True)
    kgroup.add_argument("--cusick", type=int, metavar="Q")
    kgroup.add_argument("--almost-coloopless", type=int, metavar="D")
    kgroup.add_argument("--lr", type=int, nargs="+", metavar="V")
    z_kappa.set_defaults(handler=cmd_zonolab)

    z_width = zsub.add_parser(
        "width", help="lattice width (bounded search) or width along a functional"
    )
    wgroup = z_width.add_mutually_exclusive_group(required=True)
    wgroup.add_argument("--cusick", type=int, metavar="Q")
    wgroup.add_argument("--almost-coloopless", type=int, metavar="D")
    wgroup.add_argument("--lr", type=int, nargs="+", metavar="V")
    wgroup.add_argument("--config", metavar="PATH")
    z_width.add_argument("--bound", type=int, default=3, help="search bound")
    z_width.add_argument(
        "--functional",
        type=int,
        nargs="+",
        metavar="F",
        help="evaluate width along this integer functional instead",
    )
    z_width.set_defaults(handler=cmd_zonolab)

    z_count = zsub.add_parser(
        "count", help="lattice points of the LR zonotope of v (gcd formula)"
    )
    z_count.add_argument("v", type=int, nargs="+")
    z_count.set_defaults(handler=cmd_zonolab)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BrokenPipeError:
        return 0
    except (
        ValueError,
        NonPrimitiveError,
        zonolab.RankDeficientError,
        zonolab.UnknownLabelError,
        zonolab.NotColooplessError,
        zonolab.NotSortedError,
        zonolab.DimensionMismatchError,
        zonolab.BoundTooLargeError,
        zonolab.UnboundedBodyError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
