from fractions import Fraction

import pytest

from ykh.exactcoeff import Q, Q_DIFF, MultiLaurent, TruncatedSeries, ValueParams, expand_factored, factor_value, series_exp_substitution
from ykh.utils.exceptions import SeriesExpansionError


def test_exponential_substitution():
    series = series_exp_substitution(Q, 3)
    assert list(series.coefficients) == [1, 1, Fraction(1, 2), Fraction(1, 6)]


def test_q_difference_vanishes_at_zero():
    series = series_exp_substitution(Q_DIFF, 3)
    assert list(series.coefficients) == [0, 2, 0, Fraction(1, 3)]
    assert series.valuation() == 1


def test_zero_series_valuation():
    assert TruncatedSeries(4).valuation() == 5


def test_inverse():
    series = series_exp_substitution(Q, 4)
    assert series * series.inverse() == TruncatedSeries.constant(4, 1)


def test_square_root():
    assert series_exp_substitution(Q**2, 4).sqrt() == series_exp_substitution(Q, 4)


def test_square_root_needs_unit_constant():
    with pytest.raises(SeriesExpansionError):
        series_exp_substitution(Q * 2, 2).sqrt()


def test_inverse_needs_unit_constant():
    with pytest.raises(SeriesExpansionError):
        TruncatedSeries(2, [MultiLaurent.variable("z") + 1]).inverse()


def test_expand_factored_square_root_branch():
    params = ValueParams.for_subset(3, 2)
    root = expand_factored(factor_value(1, s_power=1, params=params), 4)
    assert root * root == expand_factored(factor_value(1, s_power=2, params=params), 4)
    assert root[0] == 1
