"""Field context, canonical forms, evaluation, composition, interpolation."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mobinc.errors import (
    DegenerateTripleError,
    ModulusMismatchError,
    SingularMatrixError,
)
from mobinc.field import (
    INFINITY,
    FieldContext,
    MoebiusMap,
    class_from_index,
    enumerate_group,
    group_order,
    is_prime,
)

CTX5 = FieldContext(5)
CTX7 = FieldContext(7)


def test_is_prime_small():
    primes = [2, 3, 5, 7, 11, 13, 101]
    composites = [0, 1, 4, 6, 9, 15, 1024]
    assert all(is_prime(p) for p in primes)
    assert not any(is_prime(n) for n in composites)


def test_context_rejects_bad_moduli():
    for bad in (0, 1, 4, 15, -7):
        with pytest.raises(ValueError):
            FieldContext(bad)
    with pytest.raises(ValueError):
        FieldContext((1 << 20) + 7)  # beyond the desk-scale guard


def test_context_accepts_degenerate_small_fields():
    assert FieldContext(2).p == 2
    assert FieldContext(3).p == 3


def test_inverse_examples():
    assert CTX7.inv(1) == 1
    assert CTX7.inv(3) == 5  # 3*5 = 15 = 1 mod 7
    assert CTX7.inv(6) == 6  # 6*6 = 36 = 1 mod 7
    with pytest.raises(ZeroDivisionError):
        CTX7.inv(0)
    with pytest.raises(ZeroDivisionError):
        CTX7.inv(7)


def test_inverse_table_complete():
    for p in (2, 3, 5, 13, 101):
        ctx = FieldContext(p)
        for x in range(1, p):
            assert x * ctx.inv(x) % p == 1


def test_canonicalization_examples():
    assert MoebiusMap(2, 4, 0, 2, CTX5).as_tuple() == (1, 2, 0, 1)
    assert MoebiusMap(1, 0, 0, 1, CTX5).as_tuple() == (1, 0, 0, 1)
    with pytest.raises(SingularMatrixError):
        MoebiusMap(1, 2, 2, 4, CTX5)


@given(
    a=st.integers(0, 6), b=st.integers(0, 6),
    c=st.integers(0, 6), d=st.integers(0, 6),
    lam=st.integers(1, 6),
)
def test_canonical_form_scaling_invariant(a, b, c, d, lam):
    if (a * d - b * c) % 7 == 0:
        return
    f = MoebiusMap(a, b, c, d, CTX7)
    g = MoebiusMap(lam * a, lam * b, lam * c, lam * d, CTX7)
    assert f == g
    assert f.as_tuple() == g.as_tuple()


def test_canonical_forms_count_all_tuples_p5():
    # every nonsingular 4-tuple collapses onto exactly |PGL(2,5)| = 120 forms
    forms = set()
    nonsingular = 0
    for a, b, c, d in itertools.product(range(5), repeat=4):
        if (a * d - b * c) % 5 == 0:
            continue
        nonsingular += 1
        forms.add(MoebiusMap(a, b, c, d, CTX5).as_tuple())
    assert nonsingular == 480
    assert len(forms) == 120 == group_order(5)
    assert forms == {f.as_tuple() for f in enumerate_group(CTX5)}


def test_enumerate_group_sizes():
    for p in (2, 3, 5, 7):
        members = list(enumerate_group(FieldContext(p)))
        assert len(members) == group_order(p)
        assert len(set(members)) == len(members)


def test_class_from_index_matches_enumeration():
    for p in (3, 5, 7):
        ctx = FieldContext(p)
        listed = list(enumerate_group(ctx))
        indexed = [class_from_index(i, ctx) for i in range(group_order(p))]
        assert listed == indexed
    with pytest.raises(IndexError):
        class_from_index(group_order(5), FieldContext(5))


def test_eval_examples():
    ident = MoebiusMap.identity(CTX7)
    assert ident(4) == 4
    recip = MoebiusMap(0, 1, 1, 0, CTX5)  # 1/x
    assert recip(0) is INFINITY
    assert recip(INFINITY) == 0
    f = MoebiusMap(3, 1, 1, 2, CTX7)
    assert f(5) is INFINITY  # 5 + 2 = 0 mod 7
    assert f(1) == 6  # 4 * inv(3) = 4 * 5 = 20 = 6


def test_eval_at_infinity_affine():
    f = MoebiusMap(2, 3, 0, 1, CTX7)
    assert f(INFINITY) is INFINITY


def test_eval_is_bijection_exhaustive_p5():
    domain = CTX5.projective_points()
    for f in enumerate_group(CTX5):
        images = {f(x) if f(x) is INFINITY else f(x) for x in domain}
        assert len(images) == 6


def test_compose_examples():
    ident = MoebiusMap.identity(CTX5)
    f = MoebiusMap(1, 1, 0, 1, CTX5)  # x + 1
    g = MoebiusMap(2, 0, 0, 1, CTX5)  # 2x
    assert g.as_tuple() == (1, 0, 0, 3)
    assert (ident * f) == f
    assert (f * g).as_tuple() == (1, 3, 0, 3)  # 2x + 1
    assert f * f.inverse() == ident
    assert f.inverse() * f == ident


def test_compose_is_matrix_product_everywhere_p5():
    members = list(enumerate_group(CTX5))
    rng = random.Random(7)
    domain = CTX5.projective_points()
    for _ in range(300):
        f, g = rng.choice(members), rng.choice(members)
        h = f * g
        for x in domain:
            assert h(x) == f(g(x))


def test_compose_associative_random():
    members = list(enumerate_group(CTX7))
    rng = random.Random(11)
    for _ in range(200):
        f, g, h = (rng.choice(members) for _ in range(3))
        assert (f * g) * h == f * (g * h)


def test_compose_modulus_mismatch():
    with pytest.raises(ModulusMismatchError):
        MoebiusMap.identity(CTX5) * MoebiusMap.identity(CTX7)


def test_inverse_examples():
    ident = MoebiusMap.identity(CTX5)
    assert ident.inverse() == ident
    assert MoebiusMap(1, 1, 0, 1, CTX5).inverse().as_tuple() == (1, 4, 0, 1)
    recip = MoebiusMap(0, 1, 1, 0, CTX5)
    assert recip.inverse() == recip


def test_through_examples():
    ident = MoebiusMap.through((0, 1, 2), (0, 1, 2), CTX5)
    assert ident == MoebiusMap.identity(CTX5)
    recip = MoebiusMap.through((0, 1, INFINITY), (INFINITY, 1, 0), CTX5)
    assert recip.as_tuple() == (0, 1, 1, 0)
    f = MoebiusMap.through((0, 1, 2), (1, 0, 3), CTX5)
    assert f.as_tuple() == (1, 4, 4, 4)
    assert (f(0), f(1), f(2)) == (1, 0, 3)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_through_is_unique_in_group(p):
    ctx = FieldContext(p)
    rng = random.Random(p)
    points = ctx.projective_points()
    for _ in range(5):
        src = tuple(rng.sample(points, 3))
        dst = tuple(rng.sample(points, 3))
        f = MoebiusMap.through(src, dst, ctx)
        matching = [
            g for g in enumerate_group(ctx)
            if all(g(s) is d if d is INFINITY else g(s) == d
                   for s, d in zip(src, dst))
        ]
        assert matching == [f]


def test_through_degenerate_triples():
    with pytest.raises(DegenerateTripleError):
        MoebiusMap.through((0, 0, 1), (0, 1, 2), CTX5)
    with pytest.raises(DegenerateTripleError):
        MoebiusMap.through((0, 1, 2), (3, INFINITY, INFINITY), CTX5)
    with pytest.raises(DegenerateTripleError):
        MoebiusMap.through((0, 1, 6), (0, 1, 2), CTX5)  # 6 = 1 mod 5


@settings(max_examples=50)
@given(st.integers(0, 6), st.integers(0, 6))
def test_affine_constructor(slope, intercept):
    if slope % 7 == 0:
        with pytest.raises(SingularMatrixError):
            MoebiusMap.affine(slope, intercept, CTX7)
        return
    f = MoebiusMap.affine(slope, intercept, CTX7)
    assert f.is_affine
    for x in range(7):
        assert f(x) == (slope * x + intercept) % 7


def test_map_hash_and_repr():
    f = MoebiusMap(3, 0, 1, 4, CTX7)
    g = MoebiusMap(6, 0, 2, 8, CTX7)
    assert f == g and hash(f) == hash(g)
    assert "p=7" in repr(f)
    assert repr(INFINITY) == "INFINITY"
