from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starcats.scalars import ONE, ZERO, GaussQ, coordinates, nullspace, rank, rref, vadd, vscale

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gauss = st.builds(GaussQ, fractions, fractions)


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a


@given(gauss)
def test_inverses(a):
    if a:
        assert a * (ONE / a) == ONE
    assert a - a == ZERO


@given(gauss, gauss)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a


@given(gauss)
def test_string_round_trip(a):
    assert GaussQ.parse(str(a)) == a


@pytest.mark.parametrize("text, value", [("i", GaussQ(0, 1)), ("-i", GaussQ(0, -1)),
                                         ("1/2+3/4*i", GaussQ(Fraction(1, 2), Fraction(3, 4))),
                                         ("2", GaussQ(2))])
def test_parse_examples(text, value):
    assert GaussQ.parse(text) == value


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        GaussQ.parse("1+x")


vectors = st.lists(st.tuples(gauss, gauss, gauss), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(vectors)
def test_nullspace_is_the_kernel(rows):
    basis = nullspace(rows, 3)
    for x in basis:
        for r in rows:
            assert sum((a * b for a, b in zip(r, x)), ZERO) == ZERO
    assert len(basis) + rank(rows, 3) == 3


@settings(max_examples=60, deadline=None)
@given(vectors, gauss, gauss)
def test_coordinates_recover_combinations(rows, s, t):
    red, _ = rref(rows, 3)
    if not red:
        return
    v = vscale(s, red[0])
    if len(red) > 1:
        v = vadd(v, vscale(t, red[1]))
    c = coordinates(red, v)
    assert c is not None
    total = tuple(ZERO for _ in range(3))
    for coeff, b in zip(c, red):
        total = vadd(total, vscale(coeff, b))
    assert total == v


def test_coordinates_outside_span():
    assert coordinates([(ONE, ZERO)], (ZERO, ONE)) is None
