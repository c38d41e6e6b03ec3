"""Point sets, transformation sets, incidence counting and richness.

Incidences are affine-only: a point (x, y) in F_p^2 lies on a map f when
f(x) = y with x not a pole of f.  A pole maps to INFINITY, which is never an
affine point, so it can never contribute an incidence.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .errors import ModulusMismatchError, ThresholdError
from .field import FieldContext, MoebiusMap, group_tuples, same_context

FULL_GROUP = "full-group"
TRIPLES = "triples"


class PointSet:
    """Deduplicated set of affine points with deterministic iteration order.

    Points are pairs of ints, reduced mod p on construction and iterated in
    lexicographic order so downstream enumeration output is reproducible.
    """

    __slots__ = ("ctx", "points", "_set")

    def __init__(self, points: Iterable[tuple[int, int]], ctx: FieldContext):
        p = ctx.p
        uniq = frozenset((x % p, y % p) for x, y in points)
        self.ctx = ctx
        self.points = tuple(sorted(uniq))
        self._set = uniq

    def __len__(self):
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.points)

    def __contains__(self, point):
        return point in self._set

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.ctx.p == other.ctx.p and self._set == other._set

    def __repr__(self):
        return f"PointSet({len(self.points)} points; p={self.ctx.p})"


class TransformSet:
    """Deduplicated set of Moebius maps, iterated by canonical tuple order."""

    __slots__ = ("ctx", "maps", "_set")

    def __init__(self, maps: Iterable[MoebiusMap], ctx: FieldContext):
        uniq = frozenset(maps)
        for f in uniq:
            if f.ctx.p != ctx.p:
                raise ModulusMismatchError(
                    f"map over F_{f.ctx.p} in a set over F_{ctx.p}"
                )
        self.ctx = ctx
        self.maps = tuple(sorted(uniq, key=MoebiusMap.as_tuple))
        self._set = uniq

    def __len__(self):
        return len(self.maps)

    def __iter__(self) -> Iterator[MoebiusMap]:
        return iter(self.maps)

    def __contains__(self, f):
        return f in self._set

    def __eq__(self, other):
        if not isinstance(other, TransformSet):
            return NotImplemented
        return self.ctx.p == other.ctx.p and self._set == other._set

    def __repr__(self):
        return f"TransformSet({len(self.maps)} maps; p={self.ctx.p})"


def lies_on(s: tuple[int, int], f: MoebiusMap) -> bool:
    """True iff the affine point s = (x, y) satisfies y = f(x), x not a pole."""
    x, y = s
    p = f.ctx.p
    den = (f.c * x + f.d) % p
    return den != 0 and (y * den - f.a * x - f.b) % p == 0


def richness(f: MoebiusMap, P: PointSet) -> int:
    """Number of points of P lying on f."""
    p = P.ctx.p
    a, b, c, d = f.a, f.b, f.c, f.d
    n = 0
    for x, y in P.points:
        den = (c * x + d) % p
        if den and (y * den - a * x - b) % p == 0:
            n += 1
    return n


def count_incidences(P: PointSet, T: TransformSet) -> int:
    """I(P, T): number of pairs (point, map) with the point on the map."""
    same_context(P.ctx, T.ctx)
    p = P.ctx.p
    pts = P.points
    total = 0
    for f in T.maps:
        a, b, c, d = f.a, f.b, f.c, f.d
        for x, y in pts:
            den = (c * x + d) % p
            if den and (y * den - a * x - b) % p == 0:
                total += 1
    return total


def rich_transforms_brute(P: PointSet, k: int, mode: str = FULL_GROUP) -> TransformSet:
    """All maps with at least k points of P on them, by brute enumeration.

    mode=full-group scans every class of PGL(2, p).  mode=triples builds the
    map through each point triple with pairwise-distinct abscissae and
    ordinates, then filters by richness; it needs k >= 3.  For k >= 3 the two
    modes agree: a map through three graph points has distinct x's, and being
    a bijection, distinct y's.
    """
    ctx = P.ctx
    if mode == FULL_GROUP:
        if k < 1:
            raise ThresholdError(f"full-group mode needs k >= 1, got {k}")
        p = ctx.p
        pts = P.points
        out = []
        for a, b, c, d in group_tuples(ctx):
            n = 0
            for x, y in pts:
                den = (c * x + d) % p
                if den and (y * den - a * x - b) % p == 0:
                    n += 1
            if n >= k:
                out.append(MoebiusMap._raw(a, b, c, d, ctx))
        return TransformSet(out, ctx)
    if mode == TRIPLES:
        if k < 3:
            raise ThresholdError(f"triples mode needs k >= 3, got {k}")
        found = set()
        for s1, s2, s3 in combinations(P.points, 3):
            if len({s1[0], s2[0], s3[0]}) != 3 or len({s1[1], s2[1], s3[1]}) != 3:
                continue
            f = MoebiusMap.through(
                (s1[0], s2[0], s3[0]), (s1[1], s2[1], s3[1]), ctx
            )
            found.add(f)
        return TransformSet((f for f in found if richness(f, P) >= k), ctx)
    raise ValueError(f"unknown mode {mode!r}")


def transforms_defined_by(P: PointSet) -> TransformSet:
    """Maps passing through at least three points of P."""
    return rich_transforms_brute(P, 3, mode=TRIPLES)
