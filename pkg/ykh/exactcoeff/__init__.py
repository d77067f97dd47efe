from .cyclotomic import Cyclotomic, cyclotomic_polynomial, zeta_power
from .factored import FactoredValue, LambdaForm, ValueParams, factor_value, from_lambda_form, mirror_lambda_form, to_lambda_form
from .laurent import Q, Q_DIFF, Q_INV, Z, MultiLaurent, divide_by_q_diff, qsum, x_variable
from .series import TruncatedSeries, expand_factored, series_exp_substitution

__all__ = [
    "Cyclotomic",
    "FactoredValue",
    "LambdaForm",
    "MultiLaurent",
    "Q",
    "Q_DIFF",
    "Q_INV",
    "TruncatedSeries",
    "ValueParams",
    "Z",
    "cyclotomic_polynomial",
    "divide_by_q_diff",
    "expand_factored",
    "factor_value",
    "from_lambda_form",
    "mirror_lambda_form",
    "qsum",
    "series_exp_substitution",
    "to_lambda_form",
    "x_variable",
    "zeta_power",
]
