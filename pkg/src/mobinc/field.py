"""Arithmetic in F_p, the projective line, and Moebius transformations.

A Moebius transformation x -> (ax + b)/(cx + d) with ad - bc != 0 acts as a
bijection of the projective line P(F_p) = F_p u {INFINITY}.  Scalar multiples
of (a, b, c, d) give the same map, so every map is stored in canonical form:
the first nonzero entry in the order (a, b, c, d) is scaled to 1.  Two maps
compare equal exactly when they are the same element of PGL(2, p).

Field elements are plain Python ints reduced mod p; a FieldContext carries
the modulus and a precomputed inverse table so division is a lookup.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Union

from .errors import (
    DegenerateTripleError,
    ModulusMismatchError,
    SingularMatrixError,
)

# Keep p*p products comfortably inside machine-word range and the inverse
# table small; this library targets desk-scale moduli.
MAX_MODULUS = 1 << 20

# Cache the full list of group elements only below this order.
_GROUP_CACHE_LIMIT = 200_000


class _Infinity:
    """The point at infinity on the projective line (a singleton)."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

ProjectivePoint = Union[int, _Infinity]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldContext:
    """The prime field F_p.

    Construction validates that p is prime (and below MAX_MODULUS) and
    builds the inverse table inv[x] for x in 1..p-1.
    """

    __slots__ = ("p", "_inv", "_group_tuples")

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
            raise ValueError(f"modulus {p!r} is not a prime")
        if p >= MAX_MODULUS:
            raise ValueError(f"modulus {p} exceeds the desk-scale limit {MAX_MODULUS}")
        self.p = p
        inv = [0] * p
        if p > 1:
            inv[1 % p] = 1 % p
        for x in range(2, p):
            inv[x] = (-(p // x) * inv[p % x]) % p
        self._inv = inv
        self._group_tuples = None

    def inv(self, x: int) -> int:
        """Multiplicative inverse of x mod p; raises on zero."""
        x %= self.p
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return self._inv[x]

    def reduce(self, x: int) -> int:
        return x % self.p

    def elements(self) -> range:
        return range(self.p)

    def projective_points(self) -> list[ProjectivePoint]:
        return [*range(self.p), INFINITY]

    def __eq__(self, other):
        return isinstance(other, FieldContext) and other.p == self.p

    def __hash__(self):
        return hash(("FieldContext", self.p))

    def __repr__(self):
        return f"FieldContext(p={self.p})"


def same_context(a: FieldContext, b: FieldContext) -> FieldContext:
    if a.p != b.p:
        raise ModulusMismatchError(f"mixed moduli {a.p} and {b.p}")
    return a


class MoebiusMap:
    """An element of PGL(2, p): the class of the matrix (a, b, c, d).

    Instances are immutable by convention and always canonical, so equality
    and hashing work directly on the four entries.  Calling the map
    evaluates it on a projective point; ``f * g`` is the composition
    x -> f(g(x)); ``f.inverse()`` is the group inverse.
    """

    __slots__ = ("a", "b", "c", "d", "ctx")

    def __init__(self, a: int, b: int, c: int, d: int, ctx: FieldContext):
        p = ctx.p
        a %= p
        b %= p
        c %= p
        d %= p
        if (a * d - b * c) % p == 0:
            raise SingularMatrixError(
                f"({a},{b},{c},{d}) has zero determinant mod {p}"
            )
        # A nonsingular matrix with a = 0 has b != 0, so the lead is a or b.
        s = ctx._inv[a if a else b]
        if s != 1:
            a = a * s % p
            b = b * s % p
            c = c * s % p
            d = d * s % p
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.ctx = ctx

    @classmethod
    def _raw(cls, a, b, c, d, ctx):
        # Internal: trusted already-canonical entries, skip validation.
        m = object.__new__(cls)
        m.a = a
        m.b = b
        m.c = c
        m.d = d
        m.ctx = ctx
        return m

    @classmethod
    def identity(cls, ctx: FieldContext) -> "MoebiusMap":
        return cls._raw(1, 0, 0, 1, ctx)

    @classmethod
    def affine(cls, slope: int, intercept: int, ctx: FieldContext) -> "MoebiusMap":
        """The map x -> slope*x + intercept (slope must be nonzero)."""
        return cls(slope, intercept, 0, 1, ctx)

    def __call__(self, x: ProjectivePoint) -> ProjectivePoint:
        p = self.ctx.p
        if x is INFINITY:
            if self.c == 0:
                return INFINITY
            return self.a * self.ctx._inv[self.c] % p
        den = (self.c * x + self.d) % p
        if den == 0:
            return INFINITY
        return (self.a * x + self.b) * self.ctx._inv[den] % p

    def __mul__(self, other):
        """Composition: (f * g)(x) = f(g(x)), i.e. the matrix product."""
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        ctx = self.ctx
        if ctx.p != other.ctx.p:
            raise ModulusMismatchError(f"mixed moduli {ctx.p} and {other.ctx.p}")
        p = ctx.p
        a = (self.a * other.a + self.b * other.c) % p
        b = (self.a * other.b + self.b * other.d) % p
        c = (self.c * other.a + self.d * other.c) % p
        d = (self.c * other.b + self.d * other.d) % p
        s = ctx._inv[a if a else b]
        if s != 1:
            a = a * s % p
            b = b * s % p
            c = c * s % p
            d = d * s % p
        return MoebiusMap._raw(a, b, c, d, ctx)

    def inverse(self) -> "MoebiusMap":
        """Group inverse (the adjugate matrix, canonicalized)."""
        ctx = self.ctx
        p = ctx.p
        a, b, c, d = self.d, (-self.b) % p, (-self.c) % p, self.a
        s = ctx._inv[a if a else b]
        if s != 1:
            a = a * s % p
            b = b * s % p
            c = c * s % p
            d = d * s % p
        return MoebiusMap._raw(a, b, c, d, ctx)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.ctx.p

    @property
    def is_affine(self) -> bool:
        return self.c == 0

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
            and self.ctx.p == other.ctx.p
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d, self.ctx.p))

    def __repr__(self):
        return f"MoebiusMap({self.a},{self.b},{self.c},{self.d}; p={self.ctx.p})"

    @classmethod
    def through(
        cls,
        src: Iterable[ProjectivePoint],
        dst: Iterable[ProjectivePoint],
        ctx: FieldContext,
    ) -> "MoebiusMap":
        """The unique map sending the distinct triple src onto dst, in order.

        Built by composing the standard maps of each triple onto
        (0, 1, INFINITY), which avoids any case analysis on vanishing
        unknowns of a linear system.
        """
        src = _normalize_triple(src, ctx)
        dst = _normalize_triple(dst, ctx)
        ms = _to_zero_one_inf(src, ctx)
        md = _to_zero_one_inf(dst, ctx)
        p = ctx.p
        # md^{-1} (adjugate) times ms.
        e, f, g, h = md[3], (-md[1]) % p, (-md[2]) % p, md[0]
        a = (e * ms[0] + f * ms[2]) % p
        b = (e * ms[1] + f * ms[3]) % p
        c = (g * ms[0] + h * ms[2]) % p
        d = (g * ms[1] + h * ms[3]) % p
        return cls(a, b, c, d, ctx)


def _normalize_triple(points, ctx):
    pts = tuple(x if x is INFINITY else x % ctx.p for x in points)
    if len(pts) != 3 or len(set(pts)) != 3:
        raise DegenerateTripleError(f"need three pairwise-distinct points, got {pts}")
    return pts


def _to_zero_one_inf(triple, ctx):
    """Matrix sending the distinct triple (p1, p2, p3) to (0, 1, INFINITY)."""
    p = ctx.p
    p1, p2, p3 = triple
    if p1 is INFINITY:
        # x -> (p2 - p3)/(x - p3)
        return (0, (p2 - p3) % p, 1, (-p3) % p)
    if p2 is INFINITY:
        # x -> (x - p1)/(x - p3)
        return (1, (-p1) % p, 1, (-p3) % p)
    if p3 is INFINITY:
        # x -> (x - p1)/(p2 - p1)
        return (1, (-p1) % p, 0, (p2 - p1) % p)
    u = (p2 - p3) % p
    v = (p2 - p1) % p
    return (u, (-p1 * u) % p, v, (-p3 * v) % p)


def group_order(p: int) -> int:
    """|PGL(2, p)| = p(p-1)(p+1)."""
    return p * (p - 1) * (p + 1)


def _iter_group_tuples(p: int) -> Iterator[tuple[int, int, int, int]]:
    # Canonical forms with a = 1 (b, c free, d != bc), then a = 0, b = 1
    # (c nonzero, d free).  Lexicographic within each block.
    for b in range(p):
        for c in range(p):
            bc = b * c % p
            for d in range(p):
                if d != bc:
                    yield (1, b, c, d)
    for c in range(1, p):
        for d in range(p):
            yield (0, 1, c, d)


def group_tuples(ctx: FieldContext) -> Iterable[tuple[int, int, int, int]]:
    """All canonical (a, b, c, d) tuples of PGL(2, p), in a fixed order.

    Cached on the context for small groups; larger groups stream.
    """
    if ctx._group_tuples is not None:
        return ctx._group_tuples
    if group_order(ctx.p) <= _GROUP_CACHE_LIMIT:
        ctx._group_tuples = tuple(_iter_group_tuples(ctx.p))
        return ctx._group_tuples
    return _iter_group_tuples(ctx.p)


def enumerate_group(ctx: FieldContext) -> Iterator[MoebiusMap]:
    """Every element of PGL(2, p) exactly once, in a fixed order."""
    for a, b, c, d in group_tuples(ctx):
        yield MoebiusMap._raw(a, b, c, d, ctx)


def class_from_index(i: int, ctx: FieldContext) -> MoebiusMap:
    """The i-th element of the enumerate_group order, without enumerating.

    Used for seeded sampling without replacement from the whole group.
    """
    p = ctx.p
    order = group_order(p)
    if not 0 <= i < order:
        raise IndexError(f"index {i} outside PGL(2,{p}) of order {order}")
    block = p * p * (p - 1)
    if i < block:
        b, r = divmod(i, p * (p - 1))
        c, j = divmod(r, p - 1)
        bc = b * c % p
        d = j if j < bc else j + 1
        return MoebiusMap._raw(1, b, c, d, ctx)
    i -= block
    c, d = divmod(i, p)
    return MoebiusMap._raw(0, 1, c + 1, d, ctx)
