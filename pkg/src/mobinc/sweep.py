"""Sweep experiments: exact LHS values against bound shapes, row by row.

A sweep walks (prime, size, repetition) cells, builds a seeded instance per
cell, and emits one row per requested bound: the exact left-hand side, every
right-hand-side term, the ratio against the dominant term, hypothesis flags
and the dyadic-threshold diagnostic.  Identical configs produce identical
bytes; rows are sorted before emission, so the worker pool size never shows
in the output.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .applications import cartesian_points
from .bounds import (
    BOUND_IDS,
    BoundSpec,
    COR_KRICH_LINES,
    THM1_INCIDENCE,
    THM1_RICH,
    THM2_INCIDENCE,
    THM2_RICH,
    THM3_ENERGY,
    THM4_HYPERBOLA,
    bound_rhs,
    hypothesis_check,
)
from .energy import encode_family, energy, translate_multiplicity
from .errors import ConfigError
from .field import FieldContext, group_order, is_prime
from .generators import (
    INSTANCE_KINDS,
    RANDOM_HYPERBOLAS,
    RANDOM_POINTS,
    RANDOM_SCALARS,
    RANDOM_TRANSFORMS,
    derive_seed,
    generate_instance,
)
from .incidence import count_incidences
from .pivot import dyadic_threshold, rich_lines, rich_transforms_pivot

ROW_FIELDS = (
    "bound",
    "p",
    "size",
    "rep",
    "seed",
    "generator",
    "n_points",
    "n_a",
    "n_b",
    "n_transforms",
    "n_hyperbolas",
    "k",
    "m_stat",
    "energy",
    "lhs",
    "rhs_term1",
    "rhs_term2",
    "rhs_term3",
    "rhs_max",
    "rhs_sum",
    "ratio",
    "delta",
    "hyp_ok",
    "hyp_flags",
    "constant_dependent",
)

TIMING_FIELD = "wall_ms"

_NEEDS = {
    THM1_INCIDENCE: ("points", "transforms"),
    THM1_RICH: ("points",),
    THM2_INCIDENCE: ("scalars", "transforms"),
    THM2_RICH: ("scalars",),
    THM3_ENERGY: ("scalars", "transforms"),
    THM4_HYPERBOLA: ("scalars", "hyperbolas"),
    COR_KRICH_LINES: ("points",),
}


@dataclass(frozen=True)
class SweepConfig:
    """Parsed flat key=value configuration; fixed seed means fixed output."""

    primes: tuple[int, ...]
    bounds: tuple[str, ...]
    generator: str
    seed: int
    reps: int = 1
    sizes: Optional[tuple[int, ...]] = None
    k: int = 3
    constant: float = 1.0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        # an empty prime list is legal and yields an empty row stream
        for p in self.primes:
            if not is_prime(p) or p < 5:
                raise ConfigError(f"sweep primes must be primes >= 5, got {p}")
        for bound in self.bounds:
            if bound not in BOUND_IDS:
                raise ConfigError(f"unknown bound identifier {bound!r}")
        if self.generator not in INSTANCE_KINDS:
            raise ConfigError(f"unknown generator {self.generator!r}")
        if self.reps < 1:
            raise ConfigError("reps must be at least 1")
        if self.k < 2:
            raise ConfigError("k must be at least 2")
        if self.k < 3 and any(
            b in (THM1_RICH, THM2_RICH) for b in self.bounds
        ):
            raise ConfigError("rich-transformation bounds need k >= 3")

    @classmethod
    def from_mapping(cls, raw: dict) -> "SweepConfig":
        known = {}
        params = {}
        for key, value in raw.items():
            if key == "primes":
                known["primes"] = tuple(_as_int_list(value))
            elif key == "bounds":
                known["bounds"] = tuple(_as_str_list(value))
            elif key == "generator":
                known["generator"] = str(value)
            elif key == "seed":
                known["seed"] = int(value)
            elif key == "reps":
                known["reps"] = int(value)
            elif key == "sizes":
                known["sizes"] = tuple(_as_int_list(value))
            elif key == "k":
                known["k"] = int(value)
            elif key == "constant":
                known["constant"] = float(value)
            else:
                params[key] = _parse_value(value)
        missing = {"primes", "bounds", "generator", "seed"} - known.keys()
        if missing:
            raise ConfigError(f"config is missing keys: {sorted(missing)}")
        return cls(params=params, **known)


def _parse_value(value):
    if not isinstance(value, str):
        return value
    text = value.strip()
    if "," in text:
        return [_parse_value(part) for part in text.split(",")]
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _as_int_list(value):
    if isinstance(value, str):
        value = [part for part in value.split(",") if part.strip()]
    out = []
    for item in value if isinstance(value, (list, tuple)) else [value]:
        out.append(int(item))
    return out


def _as_str_list(value):
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    return [str(item) for item in value]


def _resolved_sizes(config: SweepConfig, size: Optional[int]) -> dict:
    params = dict(config.params)

    def fallback(name, default):
        if name not in params or params[name] is None:
            params[name] = size if size is not None else default
        return params[name]

    fallback("n", 12)
    fallback("na", 4)
    if params.get("nb") is None:
        params["nb"] = params["na"]
    fallback("nt", 8)
    fallback("nh", 8)
    return params


def _build_instance(config: SweepConfig, ctx: FieldContext, size, rep):
    """One fully-populated instance for this sweep cell.

    The configured generator runs first; any component a requested bound
    still needs is filled in by the matching seeded random generator, each
    component under its own derived seed.
    """
    params = _resolved_sizes(config, size)
    needed = set()
    for bound in config.bounds:
        needed.update(_NEEDS[bound])
    base_seed = derive_seed(config.seed, ctx.p, size, rep)
    inst = generate_instance(config.generator, params, base_seed, ctx)
    if "scalars" in needed and inst.a is None:
        extra = generate_instance(
            RANDOM_SCALARS,
            {"na": params["na"], "nb": params["nb"]},
            derive_seed(base_seed, "scalars"),
            ctx,
        )
        inst.a, inst.b = extra.a, extra.b
    if inst.a is not None and inst.b is None:
        inst.b = generate_instance(
            RANDOM_SCALARS,
            {"na": params["nb"]},
            derive_seed(base_seed, "scalars-b"),
            ctx,
        ).a
    if "points" in needed and inst.points is None:
        if inst.a is not None and inst.b is not None:
            inst.points = cartesian_points(inst.a, inst.b)
        else:
            inst.points = generate_instance(
                RANDOM_POINTS,
                {"n": params["n"]},
                derive_seed(base_seed, "points"),
                ctx,
            ).points
    if "transforms" in needed and inst.transforms is None:
        inst.transforms = generate_instance(
            RANDOM_TRANSFORMS,
            {"nt": params["nt"]},
            derive_seed(base_seed, "transforms"),
            ctx,
        ).transforms
    if "hyperbolas" in needed and inst.hyperbolas is None:
        inst.hyperbolas = generate_instance(
            RANDOM_HYPERBOLAS,
            {"nh": params["nh"]},
            derive_seed(base_seed, "hyperbolas"),
            ctx,
        ).hyperbolas
    return inst


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _compute_row(bound, inst, config, ctx, size, rep):
    start = time.perf_counter()
    k = config.k
    row = dict.fromkeys(ROW_FIELDS)
    row.update(
        bound=bound,
        p=ctx.p,
        size=size,
        rep=rep,
        seed=config.seed,
        generator=config.generator,
    )
    grid = None
    if "scalars" in _NEEDS[bound]:
        grid = cartesian_points(inst.a, inst.b)
        row["n_a"] = len(inst.a)
        row["n_b"] = len(inst.b)
        row["n_points"] = len(grid)
    params: dict = {}
    if bound == THM1_INCIDENCE:
        P, T = inst.points, inst.transforms
        lhs = count_incidences(P, T)
        _guard_incidence(lhs, len(P), len(T), ctx.p)
        params = {"P": len(P), "T": len(T)}
        row.update(n_points=len(P), n_transforms=len(T), lhs=lhs)
        row["delta"] = _round12(dyadic_threshold(len(P), len(T)))
    elif bound == THM1_RICH:
        P = inst.points
        lhs = len(rich_transforms_pivot(P, k))
        _guard_rich(lhs, ctx.p)
        params = {"P": len(P), "k": k}
        row.update(n_points=len(P), k=k, lhs=lhs)
        row["delta"] = _round12(dyadic_threshold(len(P), max(1, lhs)))
    elif bound == THM2_INCIDENCE:
        T = inst.transforms
        lhs = count_incidences(grid, T)
        _guard_incidence(lhs, len(grid), len(T), ctx.p)
        params = {"A": len(inst.a), "B": len(inst.b), "T": len(T)}
        row.update(n_transforms=len(T), lhs=lhs)
    elif bound == THM2_RICH:
        lhs = len(rich_transforms_pivot(grid, k))
        _guard_rich(lhs, ctx.p)
        params = {"A": len(inst.a), "B": len(inst.b), "k": k}
        row.update(k=k, lhs=lhs)
    elif bound == THM3_ENERGY:
        T = inst.transforms
        lhs = count_incidences(grid, T)
        _guard_incidence(lhs, len(grid), len(T), ctx.p)
        e = energy(T)
        if not len(T) ** 2 <= e <= len(T) ** 3:
            raise RuntimeError(f"energy {e} escaped [|T|^2, |T|^3]")
        params = {"A": len(inst.a), "B": len(inst.b), "T": len(T), "E": e}
        row.update(n_transforms=len(T), energy=e, lhs=lhs)
    elif bound == THM4_HYPERBOLA:
        H = inst.hyperbolas
        maps = encode_family(H, ctx)
        lhs = count_incidences(grid, maps)
        _guard_incidence(lhs, len(grid), len(maps), ctx.p)
        m = translate_multiplicity(H)
        params = {"A": len(inst.a), "B": len(inst.b), "H": len(H), "M": m}
        row.update(n_hyperbolas=len(H), m_stat=m, lhs=lhs)
    elif bound == COR_KRICH_LINES:
        P = inst.points
        lhs = len(rich_lines(P, k))
        params = {"P": len(P), "k": k}
        row.update(n_points=len(P), k=k, lhs=lhs)
    else:
        raise ConfigError(f"unknown bound identifier {bound!r}")
    spec = BoundSpec(bound, params)
    rhs = bound_rhs(spec)
    hyp = hypothesis_check(spec, ctx.p, config.constant)
    terms = list(rhs.terms) + [None] * (3 - len(rhs.terms))
    row["rhs_term1"] = _round12(terms[0])
    row["rhs_term2"] = _round12(terms[1]) if terms[1] is not None else None
    row["rhs_term3"] = _round12(terms[2]) if terms[2] is not None else None
    row["rhs_max"] = _round12(rhs.max_term)
    row["rhs_sum"] = _round12(rhs.total)
    row["ratio"] = _round12(row["lhs"] / rhs.max_term)
    row["hyp_ok"] = hyp.ok
    row["hyp_flags"] = ";".join(
        f"{name}={int(value)}" for name, value in sorted(hyp.flags.items())
    )
    row["constant_dependent"] = ";".join(hyp.constant_dependent)
    row[TIMING_FIELD] = (time.perf_counter() - start) * 1000.0
    return row


def _guard_incidence(lhs, n_points, n_transforms, p):
    if lhs > min(n_points * n_transforms, p * n_transforms):
        raise RuntimeError(f"incidence count {lhs} escaped its trivial bound")


def _guard_rich(lhs, p):
    if lhs > group_order(p):
        raise RuntimeError(f"rich count {lhs} exceeds the group order")


def _sweep_unit(args):
    config, p, size, rep = args
    ctx = FieldContext(p)
    inst = _build_instance(config, ctx, size, rep)
    return [
        _compute_row(bound, inst, config, ctx, size, rep)
        for bound in config.bounds
    ]


def sweep(config: SweepConfig, jobs: int = 1) -> list[dict]:
    """Run the sweep and return its rows, sorted deterministically."""
    sizes: tuple = config.sizes if config.sizes else (None,)
    units = [
        (config, p, size, rep)
        for p in config.primes
        for size in sizes
        for rep in range(config.reps)
    ]
    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(units))) as pool:
            chunks = list(pool.map(_sweep_unit, units))
    else:
        chunks = [_sweep_unit(unit) for unit in units]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r["bound"], r["p"], r["size"] or 0, r["rep"]))
    return rows


def _emit_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    if value is None:
        return ""
    return str(value)


def rows_to_jsonl(rows: Iterable[dict], timing: bool = False) -> str:
    """One JSON object per row with a fixed key order."""
    fields = ROW_FIELDS + ((TIMING_FIELD,) if timing else ())
    lines = []
    for row in rows:
        out = {}
        for name in fields:
            value = row.get(name)
            if isinstance(value, float):
                value = _round12(value)
            out[name] = value
        lines.append(json.dumps(out, separators=(",", ":")))
    return "\n".join(lines) + "\n" if lines else ""


def rows_to_csv(rows: Iterable[dict], timing: bool = False) -> str:
    """CSV with the fixed header; empty cells for absent values."""
    fields = ROW_FIELDS + ((TIMING_FIELD,) if timing else ())
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_emit_value(row.get(name)) for name in fields])
    return buffer.getvalue()
