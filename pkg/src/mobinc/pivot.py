"""Pivot reduction: trading curved transformations for affine lines.

Fix a pivot q = (q1, q2).  Every transformation f through q with c != 0 can
be scaled to c = 1, which forces b = q2(q1 + d) - a*q1.  Conjugating by the
two unit-determinant maps x -> 1/(q2 - x) (outside) and x -> q1 - 1/x
(inside) turns f into the upper-triangular matrix

    ((q1 + d, -1), (0, a - q2)),

i.e. the line y = ((q1 + d)x - 1)/(a - q2).  Transplanting each point
(s1, s2) with s1 != q1, s2 != q2 to (1/(q1 - s1), 1/(q2 - s2)) preserves
incidences exactly, and the only incidence lost to the two excluded rows is
the pivot itself.  A map with >= k points of P on it therefore shows up as a
line with >= k-1 transplanted points, once per pivot it passes through, so
harvesting rich lines over all pivots enumerates every k-rich transformation
at least k times.  Affine maps (c = 0) through q are picked up separately by
slope-bucketing the other points of P against q.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Union

from .errors import PivotMismatchError, ThresholdError, WrongBranchError
from .field import FieldContext, MoebiusMap
from .incidence import PointSet, TransformSet, richness


class NonVertical(NamedTuple):
    slope: int
    intercept: int


class Vertical(NamedTuple):
    x: int


AffineLine = Union[NonVertical, Vertical]


def _line_sort_key(line: AffineLine):
    if isinstance(line, Vertical):
        return (1, line.x, 0)
    return (0, line.slope, line.intercept)


def transforms_through_pivot(
    T: TransformSet, q: tuple[int, int]
) -> tuple[TransformSet, TransformSet]:
    """Split the members of T passing through q into (affine, curved) parts."""
    ctx = T.ctx
    p = ctx.p
    q1, q2 = q[0] % p, q[1] % p
    affine, curved = [], []
    for f in T.maps:
        if f(q1) == q2:
            (affine if f.c == 0 else curved).append(f)
    return TransformSet(affine, ctx), TransformSet(curved, ctx)


def conjugate_through_pivot(
    f: MoebiusMap, q: tuple[int, int]
) -> tuple[int, int, int, int]:
    """The unreduced conjugate matrix of f at pivot q, before any rescaling.

    f must pass through q with c != 0.  The result is upper triangular with
    entries ((q1+d, -1), (0, a-q2)) taken from the c = 1 scaling of f, and
    its determinant equals det of that scaling exactly.
    """
    ctx = f.ctx
    p = ctx.p
    q1, q2 = q[0] % p, q[1] % p
    if f.c == 0:
        raise WrongBranchError(f"{f!r} is affine; the conjugate needs c != 0")
    if f(q1) != q2:
        raise PivotMismatchError(f"{f!r} does not map {q1} to {q2}")
    s = ctx._inv[f.c]
    a = f.a * s % p
    d = f.d * s % p
    # a = q2 would force det = 0, so the bottom-right entry is nonzero.
    return ((q1 + d) % p, p - 1, 0, (a - q2) % p)


def line_image(f: MoebiusMap, q: tuple[int, int]) -> NonVertical:
    """The affine line that the curved map f through q conjugates to.

    The intercept is -1/(a - q2), which is never zero, and the slope is
    (q1 + d)/(a - q2), which is never zero either (slope 0 would need
    d = -q1, putting the pole of f at q1).
    """
    ctx = f.ctx
    p = ctx.p
    A, B, _, D = conjugate_through_pivot(f, q)
    s = ctx._inv[D]
    return NonVertical(A * s % p, B * s % p)


def transplant_points(P: PointSet, q: tuple[int, int]) -> tuple[PointSet, int]:
    """Move P to the line side of the pivot reduction at q.

    Points on the rows x = q1 or y = q2 are dropped; the count of dropped
    points is returned alongside.  On the kept domain the move is injective
    (each coordinate is separately invertible).
    """
    ctx = P.ctx
    p = ctx.p
    inv = ctx._inv
    q1, q2 = q[0] % p, q[1] % p
    kept = []
    excluded = 0
    for x, y in P.points:
        if x == q1 or y == q2:
            excluded += 1
        else:
            kept.append((inv[(q1 - x) % p], inv[(q2 - y) % p]))
    return PointSet(kept, ctx), excluded


def line_through(
    s: tuple[int, int], t: tuple[int, int], ctx: FieldContext
) -> AffineLine:
    """The unique line through two distinct points, in canonical form."""
    p = ctx.p
    x1, y1 = s[0] % p, s[1] % p
    x2, y2 = t[0] % p, t[1] % p
    if (x1, y1) == (x2, y2):
        raise ValueError(f"need two distinct points, got {s!r} twice")
    if x1 == x2:
        return Vertical(x1)
    m = (y2 - y1) * ctx._inv[(x2 - x1) % p] % p
    return NonVertical(m, (y1 - m * x1) % p)


def point_on_line(s: tuple[int, int], line: AffineLine, ctx: FieldContext) -> bool:
    p = ctx.p
    if isinstance(line, Vertical):
        return s[0] % p == line.x
    return (s[1] - line.slope * s[0] - line.intercept) % p == 0


def rich_lines(P: PointSet, j: int) -> tuple[AffineLine, ...]:
    """All lines carrying at least j >= 2 points of P, sorted canonically.

    Found exactly, by bucketing every point pair under the line through it
    and thresholding the per-line point counts.
    """
    if j < 2:
        raise ThresholdError(f"rich lines need a threshold >= 2, got {j}")
    ctx = P.ctx
    p = ctx.p
    inv = ctx._inv
    pts = P.points
    buckets: dict[AffineLine, set[tuple[int, int]]] = {}
    for i, (x1, y1) in enumerate(pts):
        for x2, y2 in pts[i + 1 :]:
            if x1 == x2:
                key: AffineLine = Vertical(x1)
            else:
                m = (y2 - y1) * inv[(x2 - x1) % p] % p
                key = NonVertical(m, (y1 - m * x1) % p)
            bucket = buckets.get(key)
            if bucket is None:
                buckets[key] = {(x1, y1), (x2, y2)}
            else:
                bucket.add((x1, y1))
                bucket.add((x2, y2))
    out = [line for line, members in buckets.items() if len(members) >= j]
    out.sort(key=_line_sort_key)
    return tuple(out)


def line_preimage(
    line: AffineLine, q: tuple[int, int], ctx: FieldContext
) -> Optional[MoebiusMap]:
    """Invert line_image at pivot q, or None if the line is not in its range.

    Vertical lines, lines through the origin (intercept 0) and horizontal
    lines (slope 0) are outside the range: the first two by construction,
    the last because its preimage matrix would be singular.
    """
    if isinstance(line, Vertical) or line.intercept == 0 or line.slope == 0:
        return None
    p = ctx.p
    q1, q2 = q[0] % p, q[1] % p
    u = (-ctx._inv[line.intercept]) % p  # u = a - q2
    a = (q2 + u) % p
    d = (line.slope * u - q1) % p
    b = (q2 * (q1 + d) - a * q1) % p
    return MoebiusMap(a, b, 1, d, ctx)


def _pivot_candidates(P: PointSet, k: int) -> dict[MoebiusMap, int]:
    """Candidate k-rich maps with, per map, the number of pivots yielding it."""
    if k < 3:
        raise ThresholdError(f"pivot enumeration needs k >= 3, got {k}")
    ctx = P.ctx
    p = ctx.p
    inv = ctx._inv
    pts = P.points
    multiplicity: dict[MoebiusMap, int] = {}
    for q in pts:
        q1, q2 = q
        produced = set()
        # Curved branch: harvest (k-1)-rich lines of the transplanted set.
        transplanted, _ = transplant_points(P, q)
        if len(transplanted) >= k - 1:
            for line in rich_lines(transplanted, k - 1):
                f = line_preimage(line, q, ctx)
                if f is not None and richness(f, P) >= k:
                    produced.add(f)
        # Affine branch: slope-bucket the other points against the pivot.
        slope_count: dict[int, int] = {}
        for x, y in pts:
            if x != q1 and y != q2:
                m = (y - q2) * inv[(x - q1) % p] % p
                slope_count[m] = slope_count.get(m, 0) + 1
        for m, cnt in slope_count.items():
            # y != q2 makes every bucketed slope nonzero, so the matrix below
            # is always nonsingular.
            if cnt >= k - 1:
                f = MoebiusMap(m, (q2 - m * q1) % p, 0, 1, ctx)
                if richness(f, P) >= k:
                    produced.add(f)
        for f in produced:
            multiplicity[f] = multiplicity.get(f, 0) + 1
    return multiplicity


def pivot_multiplicities(P: PointSet, k: int) -> dict[MoebiusMap, int]:
    """For each k-rich map, how many pivots independently produced it.

    Every k-rich transformation passes through >= k points of P, and each of
    those points recovers it, so every multiplicity is at least k.
    """
    return _pivot_candidates(P, k)


def rich_transforms_pivot(P: PointSet, k: int) -> TransformSet:
    """All k-rich maps (k >= 3), enumerated through the pivot reduction.

    Agrees exactly with the full-group brute scan.
    """
    return TransformSet(_pivot_candidates(P, k).keys(), P.ctx)


def dyadic_threshold(n_points: int, n_transforms: int) -> float:
    """The scale split max(3, |P|^(15/19) / |T|^(4/19)) used diagnostically."""
    if n_points < 1 or n_transforms < 1:
        raise ValueError("both set sizes must be at least 1")
    return max(3.0, n_points ** (15 / 19) / n_transforms ** (4 / 19))


class ReductionReport(NamedTuple):
    p: int
    pivots: int
    transforms: int
    triples: int
    violations: int
    line_collisions: int
    det_mismatches: int

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.line_collisions == 0 and self.det_mismatches == 0


def _check_one_pivot(ctx: FieldContext, q1: int, q2: int) -> tuple[int, int, int, int, int]:
    """Exhaustively check the reduction at one pivot.

    Returns (transforms, triples, violations, line_collisions,
    det_mismatches).  Curved maps through q are parametrized directly:
    c = 1, b forced, (a, d) ranging over a != q2, d != -q1.
    """
    p = ctx.p
    inv = ctx._inv
    points = [
        (s1, s2, inv[(q1 - s1) % p], inv[(q2 - s2) % p])
        for s1 in range(p)
        if s1 != q1
        for s2 in range(p)
        if s2 != q2
    ]
    transforms = triples = violations = det_mismatches = 0
    lines_seen = set()
    for a in range(p):
        if a == q2:
            continue
        u = (a - q2) % p
        inv_u = inv[u]
        for d in range(p):
            if (d + q1) % p == 0:
                continue
            b = (q2 * (q1 + d) - a * q1) % p
            transforms += 1
            m = (q1 + d) * inv_u % p
            i = (-inv_u) % p
            if ((q1 + d) * u - (a * d - b)) % p != 0:
                det_mismatches += 1
            lines_seen.add((m, i))
            for s1, s2, t1, t2 in points:
                den = (s1 + d) % p
                on_curve = den != 0 and (s2 * den - a * s1 - b) % p == 0
                on_line = (t2 - m * t1 - i) % p == 0
                if on_curve != on_line:
                    violations += 1
                triples += 1
    collisions = transforms - len(lines_seen)
    return transforms, triples, violations, collisions, det_mismatches


def check_reduction(
    ctx: FieldContext,
    pivots: Optional[list[tuple[int, int]]] = None,
) -> ReductionReport:
    """Verify the incidence-preserving reduction over a set of pivots.

    With pivots=None the check is exhaustive: every pivot q in F_p^2, every
    curved transformation through q, every admissible point.  Also checks
    injectivity of the conjugation (no two maps share a line) and that the
    conjugate matrix determinant matches the c = 1 determinant of the map.
    """
    p = ctx.p
    if pivots is None:
        pivots = [(q1, q2) for q1 in range(p) for q2 in range(p)]
    transforms = triples = violations = collisions = det_mismatches = 0
    for q1, q2 in pivots:
        t, tr, v, col, dm = _check_one_pivot(ctx, q1 % p, q2 % p)
        transforms += t
        triples += tr
        violations += v
        collisions += col
        det_mismatches += dm
    return ReductionReport(
        p, len(pivots), transforms, triples, violations, collisions, det_mismatches
    )
