from fractions import Fraction

import pytest

from ykh.exactcoeff import Q, Q_DIFF, Z, FactoredValue, MultiLaurent, ValueParams, factor_value, from_lambda_form, mirror_lambda_form, to_lambda_form
from ykh.utils.exceptions import InvalidParameterError

PARAMS = ValueParams.for_subset(2, 1)
HALF = ValueParams.for_subset(2, 2)


def test_params_for_subset():
    assert HALF.e_d == Fraction(1, 2)
    assert HALF.mu() == Z - Q_DIFF * Fraction(1, 2)
    assert ValueParams.homflypt() == ValueParams(1, 1, Fraction(1))


def test_z_powers_are_extracted():
    value = factor_value(Z**2 * Q, params=PARAMS)
    assert value.core == Q
    assert value.z_exp == 2
    assert value.serialize() == "(q)*z^2"


def test_mu_factors_are_extracted():
    value = factor_value(HALF.mu() ** 2 * (Q + Z), params=HALF)
    assert value.mu_exp == 2
    assert value.core == Q + Z


@pytest.mark.parametrize(
    "s_power, z_exp, mu_exp, parity",
    [(2, -1, 1, 0), (-1, 1, -1, 1), (3, -1, 1, 1), (-2, 1, -1, 0)],
)
def test_s_power_is_normalized(s_power, z_exp, mu_exp, parity):
    value = factor_value(1, s_power=s_power, params=PARAMS)
    assert (value.z_exp, value.mu_exp, value.s_parity) == (z_exp, mu_exp, parity)


def test_arithmetic():
    a = factor_value(Z, params=HALF)
    b = factor_value(HALF.mu(), params=HALF)
    assert (a + b) - b == a
    assert (a - a).is_zero
    assert a * factor_value(Z**-1, params=HALF) == factor_value(1, params=HALF)


def test_mixed_parameters_are_rejected():
    with pytest.raises(InvalidParameterError):
        factor_value(Z, params=PARAMS) + factor_value(Z, params=HALF)


def test_mixed_parity_sum_is_rejected():
    with pytest.raises(InvalidParameterError):
        factor_value(1, params=PARAMS) + factor_value(1, s_power=1, params=PARAMS)


def test_evaluate_z():
    value = factor_value(Q + Z, z_shift=-1, params=PARAMS)
    assert value.evaluate_z(Q) == (Q + Q) / Q
    with pytest.raises(InvalidParameterError):
        factor_value(1, s_power=1, params=PARAMS).evaluate_z(1)


def test_zero_serializes_as_zero():
    assert factor_value(0, params=PARAMS).serialize() == "0"
    assert FactoredValue(MultiLaurent()).is_zero


def test_lambda_form_of_z():
    form = to_lambda_form(factor_value(Z, params=PARAMS))
    assert form.numerator == 1
    assert (form.qdiff_exp, form.one_minus_exp) == (1, -1)
    assert form.serialize() == "(1)*(q-q^-1)^1*(1-lam)^-1"


@pytest.mark.parametrize(
    "raw, s_power",
    [(Q + Z, 0), (Z**2 - Q, 1), (Q_DIFF * Z + 1, -1)],
)
def test_lambda_form_is_invertible(raw, s_power):
    value = factor_value(raw, z_shift=-1, s_power=s_power, params=HALF)
    assert from_lambda_form(to_lambda_form(value)) == value


@pytest.mark.parametrize("params", [PARAMS, HALF])
def test_normalizing_factor_is_fixed_by_inversion(params):
    # 1/(z*s) is unchanged by q -> 1/q, lam -> 1/lam
    factor = to_lambda_form(factor_value(1, z_shift=-1, s_power=-1, params=params))
    assert mirror_lambda_form(factor) == factor


@pytest.mark.parametrize("raw, s_power", [(Q + Z, 0), (Z**2 - Q, 1)])
def test_inversion_is_an_involution(raw, s_power):
    form = to_lambda_form(factor_value(raw, z_shift=-1, s_power=s_power, params=HALF))
    assert mirror_lambda_form(mirror_lambda_form(form)) == form
