"""Energy of transformation sets and hyperbola-translate families.

The energy of a set T counts quadruples (f1, f2, f3, f4) in T^4 with
f1 f2^{-1} = f3 f4^{-1}.  Writing m(g) for the number of ordered pairs whose
quotient is g, the energy is the sum of m(g)^2, which pins it between |T|^2
(the diagonal pairs) and |T|^3 (three maps determine the fourth).

A translate (y - a)(x - b) = eps of the hyperbola xy = eps, eps = +-1,
rearranges to the Moebius map x -> (a*x + (eps - a*b))/(x - b), whose matrix
has determinant -eps; families of translates are measured by their energy
and by the maximum number of members sharing an x-translate or y-translate.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyFamilyError, OracleSizeError
from .field import FieldContext, MoebiusMap
from .incidence import TransformSet

ORACLE_CAP = 64


def energy(T: TransformSet) -> int:
    """Quadruple count via the quotient table sum of m(g)^2."""
    if len(T) == 0:
        raise EmptyFamilyError("energy of an empty set")
    maps = T.maps
    inverses = [f.inverse() for f in maps]
    counts: Counter[tuple[int, int, int, int]] = Counter()
    for f in maps:
        for g in inverses:
            counts[(f * g).as_tuple()] += 1
    return sum(m * m for m in counts.values())


def _proj_eq(u, v, p):
    # u and v are parallel nonzero 4-vectors mod p iff all six 2x2 minors
    # of the stacked pair vanish.
    u0, u1, u2, u3 = u
    v0, v1, v2, v3 = v
    return (
        (u0 * v1 - u1 * v0) % p == 0
        and (u0 * v2 - u2 * v0) % p == 0
        and (u0 * v3 - u3 * v0) % p == 0
        and (u1 * v2 - u2 * v1) % p == 0
        and (u1 * v3 - u3 * v1) % p == 0
        and (u2 * v3 - u3 * v2) % p == 0
    )


def energy_brute(T: TransformSet, cap: int = ORACLE_CAP) -> int:
    """Independent oracle: a literal loop over all quadruples.

    Quotients are raw adjugate products compared projectively, so this path
    shares neither the canonical form nor the inverse table with energy().
    """
    n = len(T)
    if n == 0:
        raise EmptyFamilyError("energy of an empty set")
    if n > cap:
        raise OracleSizeError(f"|T| = {n} exceeds the oracle cap {cap}")
    p = T.ctx.p
    mats = [f.as_tuple() for f in T.maps]
    quotients = []
    for a1, b1, c1, d1 in mats:
        row = []
        for a2, b2, c2, d2 in mats:
            # (a1 b1; c1 d1) times adj(a2 b2; c2 d2), entries left unreduced
            row.append(
                (
                    (a1 * d2 - b1 * c2) % p,
                    (b1 * a2 - a1 * b2) % p,
                    (c1 * d2 - d1 * c2) % p,
                    (d1 * a2 - c1 * b2) % p,
                )
            )
        quotients.append(row)
    total = 0
    for row_u in quotients:
        for u in row_u:
            for row_v in quotients:
                for v in row_v:
                    if _proj_eq(u, v, p):
                        total += 1
    return total


@dataclass(frozen=True, order=True)
class HyperbolaTranslate:
    """The curve (y - a)(x - b) = eps with eps in {+1, -1}."""

    a: int
    b: int
    eps: int

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps}")


def hyperbola_to_moebius(h: HyperbolaTranslate, ctx: FieldContext) -> MoebiusMap:
    """The transformation whose graph is the translate (poles excluded)."""
    return MoebiusMap(h.a, h.eps - h.a * h.b, 1, -h.b, ctx)


def encode_family(
    H: Iterable[HyperbolaTranslate], ctx: FieldContext
) -> TransformSet:
    return TransformSet((hyperbola_to_moebius(h, ctx) for h in H), ctx)


def translate_multiplicity(H: Iterable[HyperbolaTranslate]) -> int:
    """Maximum number of translates sharing one x-translate or y-translate."""
    H = list(H)
    if not H:
        raise EmptyFamilyError("multiplicity of an empty family")
    by_a = Counter(h.a for h in H)
    by_b = Counter(h.b for h in H)
    return max(max(by_a.values()), max(by_b.values()))


def energy_report(H: Iterable[HyperbolaTranslate], ctx: FieldContext) -> dict:
    """Exact energy and multiplicity of a translate family.

    The ratio E / (|H|^2 M) is reported, never asserted: the energy bound it
    probes carries an unknown constant, so drift is caught by comparing
    against a stored ceiling rather than a theoretical value.
    """
    H = sorted(set(H))
    if not H:
        raise EmptyFamilyError("report of an empty family")
    maps = encode_family(H, ctx)
    e = energy(maps)
    m = translate_multiplicity(H)
    size = len(H)
    return {"size": size, "energy": e, "m": m, "ratio": e / (size * size * m)}
