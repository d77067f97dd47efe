from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ykh.exactcoeff import Cyclotomic, cyclotomic_polynomial, zeta_power
from ykh.utils.exceptions import InvalidParameterError

small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=5)
field5 = st.lists(small_fractions, min_size=4, max_size=4).map(lambda coords: Cyclotomic(5, coords))


@pytest.mark.parametrize(
    "d, expected",
    [
        (1, (-1, 1)),
        (2, (1, 1)),
        (3, (1, 1, 1)),
        (4, (1, 0, 1)),
        (6, (1, -1, 1)),
        (8, (1, 0, 0, 0, 1)),
    ],
)
def test_cyclotomic_polynomial(d, expected):
    assert cyclotomic_polynomial(d) == expected


def test_conductor_must_be_positive():
    with pytest.raises(InvalidParameterError):
        cyclotomic_polynomial(0)
    with pytest.raises(InvalidParameterError):
        Cyclotomic(0)


def test_roots_of_unity_reduce():
    assert zeta_power(4, 2) == -1
    assert zeta_power(3, 1) + zeta_power(3, 2) == -1
    assert zeta_power(6, 6) == 1
    assert zeta_power(5, -1) == zeta_power(5, 4)


def test_rational_elements_compare_across_conductors():
    assert Cyclotomic(3, [2]) == Cyclotomic(5, [2])
    assert hash(Cyclotomic(3, [2])) == hash(Cyclotomic(5, [2]))
    assert Cyclotomic(4, [Fraction(1, 2)]).to_rational() == Fraction(1, 2)


def test_to_rational_rejects_irrational():
    with pytest.raises(ValueError):
        zeta_power(3, 1).to_rational()


def test_galois_conjugate_and_norm():
    assert zeta_power(5, 1).conjugate(2) == zeta_power(5, 2)
    assert Cyclotomic.from_rational(5, 2).norm() == 16


def test_inverse_and_division():
    x = zeta_power(5, 1) + 2
    assert x * x.inverse() == 1
    assert (x / x) == 1
    with pytest.raises(ZeroDivisionError):
        Cyclotomic(5).inverse()


def test_serialize():
    assert zeta_power(3, 1).serialize() == "[0,1]ζ3"
    assert Cyclotomic(2, [Fraction(-1, 2)]).serialize() == "[-1/2]ζ2"


@given(field5, field5, field5)
def test_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@given(field5)
def test_nonzero_elements_are_invertible(a):
    assume(a)
    assert a * a.inverse() == 1
