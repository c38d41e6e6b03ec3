"""Command-line front end.

Exit codes: 0 success, 2 bad input or failed validation (one-line diagnostic
on stderr), 1 internal consistency failure (enumeration mismatch, reduction
violation, or a tripped trivial-bound guard).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import io as mio
from .applications import (
    EXPANDER_KINDS,
    beck_statistics,
    expander_report,
    projective_equivalence_count,
    representation_counts,
    representation_report,
)
from .energy import energy, energy_report
from .errors import Error
from .field import FieldContext
from .incidence import count_incidences, rich_transforms_brute
from .pivot import check_reduction, rich_transforms_pivot
from .sweep import SweepConfig, rows_to_csv, rows_to_jsonl, sweep


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _emit_record(record: dict, as_json: bool) -> None:
    if as_json:
        rounded = {
            key: float(f"{value:.12g}") if isinstance(value, float) else value
            for key, value in record.items()
        }
        print(json.dumps(rounded, separators=(",", ":")))
    else:
        parts = []
        for key, value in record.items():
            if isinstance(value, float):
                value = f"{value:.12g}"
            parts.append(f"{key}={value}")
        print(" ".join(parts))


def _cmd_incidence(args) -> int:
    ctx = FieldContext(args.prime)
    points = mio.load_points(args.points, ctx)
    transforms = mio.load_transforms(args.transforms, ctx)
    print(count_incidences(points, transforms))
    return 0


def _cmd_rich_enum(args) -> int:
    ctx = FieldContext(args.prime)
    points = mio.load_points(args.points, ctx)
    results = {}
    timings = {}
    if args.method in ("pivot", "both"):
        start = time.perf_counter()
        results["pivot"] = rich_transforms_pivot(points, args.k)
        timings["pivot"] = (time.perf_counter() - start) * 1000.0
    if args.method in ("brute", "both"):
        start = time.perf_counter()
        results["brute"] = rich_transforms_brute(points, args.k)
        timings["brute"] = (time.perf_counter() - start) * 1000.0
    shown = results.get("pivot") or results["brute"]
    for f in shown:
        print(mio.format_transform(f))
    for method, ms in sorted(timings.items()):
        print(f"timing {method}_ms={ms:.3f}", file=sys.stderr)
    if args.method == "both":
        if results["pivot"] == results["brute"]:
            print("MATCH")
        else:
            print("MISMATCH")
            only_pivot = set(results["pivot"]) - set(results["brute"])
            only_brute = set(results["brute"]) - set(results["pivot"])
            print(
                f"mismatch: pivot-only={len(only_pivot)} "
                f"brute-only={len(only_brute)}",
                file=sys.stderr,
            )
            return 1
    return 0


def _cmd_energy(args) -> int:
    ctx = FieldContext(args.prime)
    if (args.transforms is None) == (args.hyperbolas is None):
        raise Error("give exactly one of --transforms or --hyperbolas")
    if args.hyperbolas is not None:
        family = mio.load_hyperbolas(args.hyperbolas, ctx)
        record = energy_report(family, ctx)
    else:
        maps = mio.load_transforms(args.transforms, ctx)
        record = {"size": len(maps), "energy": energy(maps)}
    _emit_record(record, args.json)
    return 0


def _cmd_repr(args) -> int:
    ctx = FieldContext(args.prime)
    A = mio.load_scalars(args.a, ctx)
    B = mio.load_scalars(args.b, ctx)
    if args.table:
        table = representation_counts(A, B)
        for lam in sorted(table):
            print(f"{lam},{table[lam]}")
        return 0
    record = representation_report(A, B)
    _emit_record(record, args.json)
    if args.strict and not record["hypothesis_ok"]:
        print("error: hypothesis |A+B| <= sqrt(p) fails", file=sys.stderr)
        return 2
    return 0


def _cmd_beck(args) -> int:
    ctx = FieldContext(args.prime)
    points = mio.load_points(args.points, ctx)
    _emit_record(beck_statistics(points, args.constant), args.json)
    return 0


def _cmd_expander(args) -> int:
    ctx = FieldContext(args.prime)
    A = mio.load_scalars(args.a, ctx)
    _emit_record(expander_report(A, args.kind), args.json)
    return 0


def _cmd_equiv_count(args) -> int:
    ctx = FieldContext(args.prime)
    ground = mio.load_scalars(args.a, ctx)
    pattern = mio.load_scalars(args.s, ctx)
    _emit_record(projective_equivalence_count(ground, pattern), args.json)
    return 0


def _reduction_chunk(args):
    p, pivots = args
    report = check_reduction(FieldContext(p), pivots)
    return (
        report.transforms,
        report.triples,
        report.violations,
        report.line_collisions,
        report.det_mismatches,
    )


def _cmd_verify_reduction(args) -> int:
    ctx = FieldContext(args.prime)
    p = ctx.p
    if args.exhaustive:
        pivots = [(q1, q2) for q1 in range(p) for q2 in range(p)]
    else:
        rng = random.Random(args.seed)
        count = min(args.samples, p * p)
        pivots = sorted(
            (v // p, v % p) for v in rng.sample(range(p * p), count)
        )
    jobs = min(args.jobs, len(pivots))
    if jobs > 1:
        chunks = [(p, pivots[i::jobs]) for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_reduction_chunk, chunks))
        transforms, triples, violations, collisions, mismatches = (
            tuple(sum(part[i] for part in parts) for i in range(5))
        )
    else:
        report = check_reduction(ctx, pivots)
        transforms = report.transforms
        triples = report.triples
        violations = report.violations
        collisions = report.line_collisions
        mismatches = report.det_mismatches
    print(
        f"p={p} pivots={len(pivots)} transforms={transforms} "
        f"triples={triples} violations={violations} "
        f"line-collisions={collisions} det-mismatches={mismatches}"
    )
    if violations or collisions or mismatches:
        print("REDUCTION CHECK FAILED", file=sys.stderr)
        return 1
    print("OK")
    return 0


def _cmd_sweep(args) -> int:
    raw = mio.load_config(args.config)
    if args.seed is not None:
        raw["seed"] = str(args.seed)
    config = SweepConfig.from_mapping(raw)
    rows = sweep(config, jobs=args.jobs)
    if args.format == "csv":
        sys.stdout.write(rows_to_csv(rows, timing=args.timing))
    else:
        sys.stdout.write(rows_to_jsonl(rows, timing=args.timing))
    if args.strict:
        bad = sum(1 for row in rows if not row["hyp_ok"])
        if bad:
            print(f"error: {bad} rows violate their hypotheses", file=sys.stderr)
            return 2
    return 0


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mobinc",
        description="Exact Moebius-transformation incidence toolkit over F_p.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("-p", "--prime", type=int, required=True,
                         help="prime modulus")
        cmd.set_defaults(handler=handler)
        return cmd

    cmd = add("incidence", _cmd_incidence,
              "count incidences between a point set and a transform set")
    cmd.add_argument("--points", required=True)
    cmd.add_argument("--transforms", required=True)

    cmd = add("rich-enum", _cmd_rich_enum,
              "enumerate k-rich transformations (pivot and/or brute)")
    cmd.add_argument("--points", required=True)
    cmd.add_argument("-k", type=int, required=True)
    cmd.add_argument("--method", choices=("pivot", "brute", "both"),
                     default="both")

    cmd = add("energy", _cmd_energy,
              "energy of a transform set or hyperbola-translate family")
    cmd.add_argument("--transforms")
    cmd.add_argument("--hyperbolas")
    cmd.add_argument("--json", action="store_true")

    cmd = add("repr", _cmd_repr,
              "representation counts of products, with the small-sumset report")
    cmd.add_argument("--a", required=True)
    cmd.add_argument("--b", required=True)
    cmd.add_argument("--table", action="store_true",
                     help="print the raw lambda,count table instead")
    cmd.add_argument("--json", action="store_true")
    cmd.add_argument("--strict", action="store_true")

    cmd = add("beck", _cmd_beck,
              "rich-or-many dichotomy statistics of a point set")
    cmd.add_argument("--points", required=True)
    cmd.add_argument("--constant", type=float, default=1.0)
    cmd.add_argument("--json", action="store_true")

    cmd = add("expander", _cmd_expander, "expander value-set sizes")
    cmd.add_argument("kind", choices=EXPANDER_KINDS)
    cmd.add_argument("--a", required=True)
    cmd.add_argument("--json", action="store_true")

    cmd = add("equiv-count", _cmd_equiv_count,
              "count subsets of a ground set projectively equivalent to a pattern")
    cmd.add_argument("--a", required=True, help="ground set file")
    cmd.add_argument("--s", required=True, help="pattern set file")
    cmd.add_argument("--json", action="store_true")

    cmd = add("verify-reduction", _cmd_verify_reduction,
              "check the pivot reduction preserves incidences")
    cmd.add_argument("--exhaustive", action="store_true",
                     help="check every pivot in F_p^2")
    cmd.add_argument("--samples", type=int, default=8,
                     help="number of sampled pivots when not exhaustive")
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--jobs", type=int, default=_default_jobs())

    cmd = sub.add_parser("sweep", help="run a configured bounds sweep")
    cmd.add_argument("--config", required=True)
    cmd.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    cmd.add_argument("--jobs", type=int, default=_default_jobs())
    cmd.add_argument("--seed", type=int, default=None,
                     help="override the seed in the config file")
    cmd.add_argument("--timing", action="store_true",
                     help="append wall_ms to rows (not byte-reproducible)")
    cmd.add_argument("--strict", action="store_true")
    cmd.set_defaults(handler=_cmd_sweep)

    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.handler(args)
    except (Error, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
