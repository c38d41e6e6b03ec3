"""Exact constructions for the downstream counting problems.

Representation counts of products, the rich-or-many dichotomy statistics,
the two expander value sets, and counting subsets of a ground set that are
projectively equivalent to a pattern.  Everything here is an exact fold over
a product space; growth exponents only ever appear as reported ratios.
"""

from __future__ import annotations

from collections import Counter
from itertools import permutations
from typing import Iterable, Iterator

from .errors import (
    DegenerateInputError,
    DegeneratePatternError,
    UnbalancedInputError,
)
from .field import INFINITY, FieldContext, MoebiusMap, same_context
from .incidence import PointSet, richness, transforms_defined_by

SHIFT_INVERT = "shift-invert"
RATIONAL = "rational"
EXPANDER_KINDS = (SHIFT_INVERT, RATIONAL)

# claimed growth exponents, used only to normalize reported ratios
_EXPANDER_EXPONENT = {SHIFT_INVERT: 6 / 5, RATIONAL: 4 / 3}


class ScalarSet:
    """Deduplicated set of field elements with sorted iteration order."""

    __slots__ = ("ctx", "values", "_set")

    def __init__(self, values: Iterable[int], ctx: FieldContext):
        p = ctx.p
        uniq = frozenset(v % p for v in values)
        self.ctx = ctx
        self.values = tuple(sorted(uniq))
        self._set = uniq

    def __len__(self):
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __contains__(self, v):
        return v in self._set

    def __eq__(self, other):
        if not isinstance(other, ScalarSet):
            return NotImplemented
        return self.ctx.p == other.ctx.p and self._set == other._set

    def __repr__(self):
        return f"ScalarSet({list(self.values)}; p={self.ctx.p})"


def cartesian_points(A: ScalarSet, B: ScalarSet) -> PointSet:
    """The grid A x B as a point set."""
    same_context(A.ctx, B.ctx)
    return PointSet(((a, b) for a in A for b in B), A.ctx)


def sumset(A: ScalarSet, B: ScalarSet) -> ScalarSet:
    same_context(A.ctx, B.ctx)
    p = A.ctx.p
    return ScalarSet({(a + b) % p for a in A for b in B}, A.ctx)


def representation_counts(A: ScalarSet, B: ScalarSet) -> dict[int, int]:
    """Table lambda -> #{(a, b) in A x B : ab = lambda} over attained products."""
    same_context(A.ctx, B.ctx)
    p = A.ctx.p
    table: Counter[int] = Counter()
    for a in A:
        for b in B:
            table[a * b % p] += 1
    return dict(table)


def representation_report(A: ScalarSet, B: ScalarSet) -> dict:
    """Compare the largest nonzero representation count against K^(6/5) N^(9/10).

    Needs the balanced case |A| = |B| = N.  K is |A+B|/N, and the hypothesis
    flag records whether KN = |A+B| stays below sqrt(p).  The ratio is
    reported, not asserted.
    """
    same_context(A.ctx, B.ctx)
    if len(A) != len(B):
        raise UnbalancedInputError(
            f"report needs |A| = |B|, got {len(A)} and {len(B)}"
        )
    n = len(A)
    if n == 0:
        raise DegenerateInputError("report of empty sets")
    sum_size = len(sumset(A, B))
    k = sum_size / n
    table = representation_counts(A, B)
    max_r = max((cnt for lam, cnt in table.items() if lam != 0), default=0)
    bound_shape = k ** (6 / 5) * n ** (9 / 10)
    return {
        "n": n,
        "k": k,
        "max_r": max_r,
        "bound_shape": bound_shape,
        "ratio": max_r / bound_shape,
        "hypothesis_ok": sum_size <= A.ctx.p ** 0.5,
    }


def beck_statistics(P: PointSet, constant: float = 1.0) -> dict:
    """Either-many-points-on-one-map-or-many-maps dichotomy statistics.

    Reports how many maps P defines (maps through three of its points), the
    largest point count on any of them, and the window endpoints
    constant*n^(3/7) and n/constant^(7/4) for the supplied constant.
    """
    n = len(P)
    if n < 3:
        raise DegenerateInputError(f"need at least 3 points, got {n}")
    defined = transforms_defined_by(P)
    max_richness = max((richness(f, P) for f in defined), default=0)
    return {
        "n": n,
        "max_richness": max_richness,
        "defined_count": len(defined),
        "rich_threshold_lo": constant * n ** (3 / 7),
        "rich_threshold_hi": n / constant ** (7 / 4),
        "constant": constant,
    }


def expander_shift_invert(A: ScalarSet) -> ScalarSet:
    """The value set {a + 1/(b - c) : a, b, c in A, b != c}."""
    ctx = A.ctx
    p = ctx.p
    inv = ctx._inv
    diffs = {(b - c) % p for b in A for c in A if b != c}
    out = {(a + inv[d]) % p for a in A for d in diffs}
    return ScalarSet(out, ctx)


def expander_rational(A: ScalarSet) -> ScalarSet:
    """The value set {(ab + c)/(b + d) : a, b, c, d in A, b + d != 0}."""
    ctx = A.ctx
    p = ctx.p
    inv = ctx._inv
    out = set()
    vals = A.values
    for b in vals:
        numerators = {(a * b + c) % p for a in vals for c in vals}
        for d in vals:
            s = (b + d) % p
            if s:
                r = inv[s]
                out.update(num * r % p for num in numerators)
    return ScalarSet(out, ctx)


def expander_report(A: ScalarSet, kind: str) -> dict:
    """Value-set size next to the claimed growth exponent for that kind."""
    if kind == SHIFT_INVERT:
        out = expander_shift_invert(A)
    elif kind == RATIONAL:
        out = expander_rational(A)
    else:
        raise ValueError(f"unknown expander kind {kind!r}")
    exponent = _EXPANDER_EXPONENT[kind]
    n = len(A)
    size = len(out)
    return {
        "kind": kind,
        "input_size": n,
        "output_size": size,
        "exponent": exponent,
        "ratio": size / n ** exponent if n else 0.0,
    }


def projective_equivalence_count(A: ScalarSet, S: ScalarSet) -> dict:
    """Count maps carrying the pattern S into A, and the distinct images.

    One ordered reference triple of S is fixed and every ordered triple of
    distinct elements of A is tried as its target; the map is then unique,
    and it is kept when all of S lands inside A (never at infinity).
    map_count counts the kept classes, subset_count the distinct image sets
    f(S), which are the subsets of A projectively equivalent to S.
    """
    same_context(A.ctx, S.ctx)
    if len(S) < 3:
        raise DegeneratePatternError(f"pattern needs >= 3 elements, got {len(S)}")
    if len(S) > len(A):
        return {"map_count": 0, "subset_count": 0}
    ctx = A.ctx
    ref = S.values[:3]
    members = A._set
    maps = set()
    images = set()
    for target in permutations(A.values, 3):
        f = MoebiusMap.through(ref, target, ctx)
        image = []
        for s in S.values:
            v = f(s)
            if v is INFINITY or v not in members:
                break
            image.append(v)
        else:
            maps.add(f)
            images.add(frozenset(image))
    return {"map_count": len(maps), "subset_count": len(images)}
