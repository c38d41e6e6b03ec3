"""Seeded, reproducible instance generators for the experiment harness.

Every generator is a pure function of (kind, params, seed, field): the same
inputs always rebuild the same instance, byte for byte.  Kinds cover the
extremal shapes the bounds care about: random point sets, Cartesian grids,
arithmetic and geometric progressions (small sumset), hyperbola-translate
grids, random transformation sets, and the transformations defined by a
random point set.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Optional

from .applications import ScalarSet, cartesian_points
from .energy import HyperbolaTranslate
from .errors import InfeasibleSizeError
from .field import FieldContext, class_from_index, group_order
from .incidence import PointSet, TransformSet, transforms_defined_by

RANDOM_POINTS = "random-points"
RANDOM_SCALARS = "random-scalars"
AP = "ap"
GP = "gp"
CARTESIAN = "cartesian"
RANDOM_TRANSFORMS = "random-transforms"
DEFINED_BY = "transforms-defined-by"
HYPERBOLA_GRID = "hyperbola-grid"
RANDOM_HYPERBOLAS = "random-hyperbolas"

INSTANCE_KINDS = (
    RANDOM_POINTS,
    RANDOM_SCALARS,
    AP,
    GP,
    CARTESIAN,
    RANDOM_TRANSFORMS,
    DEFINED_BY,
    HYPERBOLA_GRID,
    RANDOM_HYPERBOLAS,
)


@dataclass
class Instance:
    """Whatever one generator call produced; unused components stay None."""

    kind: str
    p: int
    seed: int
    points: Optional[PointSet] = None
    a: Optional[ScalarSet] = None
    b: Optional[ScalarSet] = None
    transforms: Optional[TransformSet] = None
    hyperbolas: Optional[tuple[HyperbolaTranslate, ...]] = None


def derive_seed(*parts) -> int:
    """Mix arbitrary labels into a 63-bit seed, stable across platforms."""
    blob = ":".join(repr(part) for part in parts).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big") >> 1


def _need(params: dict, key: str, default=None):
    value = params.get(key, default)
    if value is None:
        raise InfeasibleSizeError(f"generator parameter {key!r} is required")
    return int(value)


def _sample_scalars(rng: random.Random, n: int, ctx: FieldContext) -> ScalarSet:
    if n > ctx.p:
        raise InfeasibleSizeError(f"cannot draw {n} distinct scalars mod {ctx.p}")
    return ScalarSet(rng.sample(range(ctx.p), n), ctx)


def _sample_points(rng: random.Random, n: int, ctx: FieldContext) -> PointSet:
    p = ctx.p
    if n > p * p:
        raise InfeasibleSizeError(f"cannot draw {n} distinct points in F_{p}^2")
    cells = rng.sample(range(p * p), n)
    return PointSet(((v // p, v % p) for v in cells), ctx)


def _ap_scalars(rng, n, ctx, start, step) -> ScalarSet:
    p = ctx.p
    if n > p:
        raise InfeasibleSizeError(f"progression of {n} distinct terms mod {p}")
    if start is None:
        start = rng.randrange(p)
    if step is None:
        step = rng.randrange(1, p)
    step %= p
    if step == 0 and n > 1:
        raise InfeasibleSizeError("zero step cannot give distinct terms")
    return ScalarSet(((start + i * step) % p for i in range(n)), ctx)


def _gp_scalars(rng, n, ctx, start, ratio) -> ScalarSet:
    p = ctx.p
    explicit = ratio is not None
    for _ in range(200):
        r = ratio if explicit else rng.randrange(2, max(3, p))
        s = start if start is not None else rng.randrange(1, p)
        values = {s * pow(r, i, p) % p for i in range(n)}
        if len(values) == n:
            return ScalarSet(values, ctx)
        if explicit and start is not None:
            break
    raise InfeasibleSizeError(
        f"no geometric progression of {n} distinct terms found mod {p}"
    )


def _sample_transforms(rng, n, ctx) -> TransformSet:
    order = group_order(ctx.p)
    if n > order:
        raise InfeasibleSizeError(f"PGL(2,{ctx.p}) has only {order} elements")
    indices = rng.sample(range(order), n)
    return TransformSet((class_from_index(i, ctx) for i in indices), ctx)


def _sample_hyperbolas(rng, n, ctx) -> tuple[HyperbolaTranslate, ...]:
    p = ctx.p
    if n > 2 * p * p:
        raise InfeasibleSizeError(f"only {2 * p * p} distinct translates mod {p}")
    picks = rng.sample(range(2 * p * p), n)
    out = [
        HyperbolaTranslate((v // p) % p, v % p, 1 if v < p * p else -1)
        for v in picks
    ]
    return tuple(sorted(out))


def _grid_hyperbolas(rng, params, ctx) -> tuple[HyperbolaTranslate, ...]:
    p = ctx.p
    na = _need(params, "na", params.get("n", 3))
    nb = _need(params, "nb", na)
    eps = int(params.get("eps", 1))
    a_values = params.get("a")
    b_values = params.get("b")
    a_set = (
        ScalarSet(a_values, ctx) if a_values is not None
        else _sample_scalars(rng, na, ctx)
    )
    b_set = (
        ScalarSet(b_values, ctx) if b_values is not None
        else _sample_scalars(rng, nb, ctx)
    )
    return tuple(
        sorted(HyperbolaTranslate(a, b, eps) for a in a_set for b in b_set)
    )


def generate_instance(
    kind: str, params: dict, seed: int, ctx: FieldContext
) -> Instance:
    """Build one instance of the requested kind, deterministically."""
    rng = random.Random(seed)
    inst = Instance(kind=kind, p=ctx.p, seed=seed)
    if kind == RANDOM_POINTS:
        inst.points = _sample_points(rng, _need(params, "n"), ctx)
    elif kind == RANDOM_SCALARS:
        inst.a = _sample_scalars(rng, _need(params, "na", params.get("n")), ctx)
        if "nb" in params:
            inst.b = _sample_scalars(rng, int(params["nb"]), ctx)
    elif kind == AP:
        na = _need(params, "na", params.get("n"))
        inst.a = _ap_scalars(rng, na, ctx, params.get("start"), params.get("step"))
        nb = params.get("nb")
        if nb is not None:
            inst.b = _ap_scalars(
                rng, int(nb), ctx, params.get("b_start"), params.get("b_step")
            )
    elif kind == GP:
        na = _need(params, "na", params.get("n"))
        inst.a = _gp_scalars(rng, na, ctx, params.get("start"), params.get("ratio"))
        nb = params.get("nb")
        if nb is not None:
            inst.b = _gp_scalars(
                rng, int(nb), ctx, params.get("b_start"), params.get("b_ratio")
            )
    elif kind == CARTESIAN:
        a_values = params.get("a")
        b_values = params.get("b")
        inst.a = (
            ScalarSet(a_values, ctx) if a_values is not None
            else _sample_scalars(rng, _need(params, "na", params.get("n")), ctx)
        )
        inst.b = (
            ScalarSet(b_values, ctx) if b_values is not None
            else _sample_scalars(rng, _need(params, "nb", len(inst.a)), ctx)
        )
        inst.points = cartesian_points(inst.a, inst.b)
    elif kind == RANDOM_TRANSFORMS:
        inst.transforms = _sample_transforms(
            rng, _need(params, "nt", params.get("n")), ctx
        )
    elif kind == DEFINED_BY:
        inst.points = _sample_points(rng, _need(params, "n"), ctx)
        inst.transforms = transforms_defined_by(inst.points)
    elif kind == HYPERBOLA_GRID:
        inst.hyperbolas = _grid_hyperbolas(rng, params, ctx)
    elif kind == RANDOM_HYPERBOLAS:
        inst.hyperbolas = _sample_hyperbolas(
            rng, _need(params, "nh", params.get("n")), ctx
        )
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    return inst
