from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from enc_lab.exact import (
    DimensionError,
    Monomial,
    MonomialSupport,
    TruncationError,
    Weight,
    as_rat,
    complement,
    frac,
    fractional_vector,
    parse_rat,
    weight_of_monomial,
    weight_of_series,
)

rats = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)
unit_rats = st.fractions(min_value=0, max_value=1, max_denominator=60)
exps = st.integers(min_value=0, max_value=6)


def weights(d):
    return st.lists(st.fractions(min_value=0, max_value=5, max_denominator=30), min_size=d, max_size=d).map(
        lambda c: Weight(tuple(c))
    )


def monomials(d):
    return st.lists(exps, min_size=d, max_size=d).map(lambda e: Monomial(tuple(e)))


@pytest.mark.parametrize("q, expected", [(F(7, 3), F(1, 3)), (F(-1, 4), F(3, 4)), (2, 0)])
def test_frac_examples(q, expected):
    assert frac(q) == expected


def test_fractional_vector_examples():
    assert fractional_vector(13, [3, 4, 5], 1) == Weight.of(F(3, 13), F(4, 13), F(5, 13))
    assert fractional_vector(13, [3, 4, 5], 2) == Weight.of(F(6, 13), F(8, 13), F(10, 13))
    assert fractional_vector(5, [2, 3, 1, 0], 4) == Weight.of(F(3, 5), F(2, 5), F(4, 5), 0)


def test_weight_of_monomial_examples():
    assert weight_of_monomial(Weight.of(F(1, 3), F(1, 3), F(2, 3)), (0, 0, 2)) == F(4, 3)
    assert weight_of_monomial(Weight.of(*[F(1, 2)] * 4), (1, 1, 1, 1)) == 2
    assert weight_of_monomial(Weight.of(F(3, 13), F(4, 13), F(5, 13)), (3, 1, 0)) == 1


def test_weight_of_series_examples():
    w = Weight.of(F(1, 3), F(1, 3), F(2, 3))
    assert weight_of_series(w, MonomialSupport.of((1, 1, 0), (0, 0, 2))) == F(2, 3)
    half = Weight.of(*[F(1, 2)] * 4)
    assert weight_of_series(half, MonomialSupport.of((2, 0, 0, 0), (0, 3, 0, 0))) == 1
    w13 = Weight.of(F(3, 13), F(4, 13), F(5, 13))
    f = MonomialSupport.of((3, 1, 0), (0, 2, 1), (1, 0, 2))
    # brute force over the support
    assert weight_of_series(w13, f) == min(sum(c * e for c, e in zip(w13, m.exponents)) for m in f) == 1


def test_complement_examples():
    assert complement(Weight.of(F(3, 13), F(4, 13), F(5, 13), 0)) == Weight.of(F(10, 13), F(9, 13), F(8, 13), 1)
    half = Weight.of(*[F(1, 2)] * 4)
    assert complement(half) == half
    assert complement(Weight.of(1, 0, 1, 0)) == Weight.of(0, 1, 0, 1)


def test_rejections():
    with pytest.raises(ValueError):
        MonomialSupport(frozenset())
    with pytest.raises(DimensionError):
        weight_of_monomial(Weight.of(1, 2), (1, 1, 1))
    with pytest.raises(ValueError):
        complement(Weight.of(F(3, 2), 0))
    with pytest.raises(ValueError):
        Weight.of(F(-1, 2))
    with pytest.raises(TypeError):
        as_rat(0.5)
    with pytest.raises(ValueError):
        parse_rat("0.5")
    with pytest.raises(ValueError):
        MonomialSupport.of((3, 0), truncation_degree=2)
    assert parse_rat(" 12/13 ") == F(12, 13)
    assert parse_rat("-4/6") == F(-2, 3)


def test_strict_truncation_refuses_uncertified_minimum():
    f = MonomialSupport.of((3, 0), truncation_degree=3)
    # any degree-4 monomial weighs at least 4 * 1/10 < 3 * 1/2 = listed minimum
    with pytest.raises(TruncationError):
        weight_of_series(Weight.of(F(1, 2), F(1, 10)), f, strict=True)
    assert weight_of_series(Weight.of(F(1, 10), F(1, 2)), f, strict=True) == F(3, 10)


@given(rats)
def test_frac_range(q):
    p = frac(q)
    assert 0 <= p < 1
    assert (q - p).denominator == 1


@given(st.integers(1, 40), st.lists(st.integers(-100, 100), min_size=1, max_size=4), st.integers(-200, 200))
def test_fractional_vector_periodic(r, a, j):
    assert fractional_vector(r, a, j) == fractional_vector(r, a, j % r)


@given(st.integers(1, 5).flatmap(lambda d: st.tuples(weights(d), monomials(d), monomials(d))))
def test_weight_additive(data):
    w, m1, m2 = data
    assert weight_of_monomial(w, m1 * m2) == weight_of_monomial(w, m1) + weight_of_monomial(w, m2)


@given(
    st.integers(1, 4).flatmap(
        lambda d: st.tuples(weights(d), st.lists(monomials(d), min_size=1, max_size=5), st.lists(monomials(d), min_size=1, max_size=5))
    )
)
def test_series_weight_of_union_is_min(data):
    w, l1, l2 = data
    f1, f2 = MonomialSupport(frozenset(l1)), MonomialSupport(frozenset(l2))
    assert weight_of_series(w, f1.union(f2)) == min(weight_of_series(w, f1), weight_of_series(w, f2))


@given(st.lists(unit_rats, min_size=1, max_size=5))
def test_complement_involution(coords):
    w = Weight(tuple(coords))
    assert complement(complement(w)) == w


@given(st.integers(2, 60), st.lists(st.integers(0, 200), min_size=1, max_size=4), st.data())
def test_alpha_complementarity(r, a, data):
    j = data.draw(st.integers(1, r - 1))
    if any((j * x) % r == 0 for x in a):
        return
    total = fractional_vector(r, a, j) + fractional_vector(r, a, r - j)
    assert total == Weight(tuple(F(1) for _ in a))
