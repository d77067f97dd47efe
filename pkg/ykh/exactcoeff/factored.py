"""Canonical factored form of invariant values.

An invariant value is ``core(q, z) * z^a * mu^b * s^p`` where
``mu = z - (q - q^-1) * E`` for the E-system constant E, ``s`` is a square
root of ``lam = mu / z`` and p is 0 or 1. The core is not divisible by z or by
mu. Because the coefficient ring is a unique factorization domain, that form is
unique, which is what makes invariant equality decidable by comparing fields.

The same value can be rewritten in the λ variables:
``N(q, lam) * (q - q^-1)^alpha * (1 - lam)^beta * s^p`` with N free of both
factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from ..utils.exceptions import InvalidParameterError, UnsupportedKindError
from .laurent import Q_DIFF, Q_INV, MultiLaurent, Z, divide_by_q_diff

LAM = MultiLaurent.variable("lam")


@dataclass(frozen=True)
class ValueParams:
    """Parameters that fix the meaning of mu and s.

    ``e_d`` is None for values that carry no mu factorisation (generic traces).
    """

    d: int = 1
    d_size: Optional[int] = 1
    e_d: Optional[Fraction] = Fraction(1)

    @classmethod
    def homflypt(cls) -> "ValueParams":
        return cls(1, 1, Fraction(1))

    @classmethod
    def for_subset(cls, d: int, d_size: int) -> "ValueParams":
        return cls(d, d_size, Fraction(1, d_size))

    def mu(self) -> MultiLaurent:
        if self.e_d is None:
            raise InvalidParameterError("values without an E-system constant have no mu factor")
        return Z - Q_DIFF * self.e_d

    def mu_root(self) -> MultiLaurent:
        """mu = z - root; the root as a polynomial in q."""
        return Q_DIFF * self.e_d


@dataclass(frozen=True)
class FactoredValue:
    core: MultiLaurent
    z_exp: int = 0
    mu_exp: int = 0
    s_parity: int = 0
    params: ValueParams = ValueParams()

    @property
    def is_zero(self) -> bool:
        return not self.core

    def __mul__(self, other) -> "FactoredValue":
        if not isinstance(other, FactoredValue):
            return factor_value(self.core * other, self.z_exp, self.mu_exp, self.s_parity, self.params)
        self._check_compatible(other)
        return factor_value(
            self.core * other.core,
            self.z_exp + other.z_exp,
            self.mu_exp + other.mu_exp,
            self.s_parity + other.s_parity,
            self.params,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "FactoredValue":
        return FactoredValue(-self.core, self.z_exp, self.mu_exp, self.s_parity, self.params)

    def __add__(self, other: "FactoredValue") -> "FactoredValue":
        self._check_compatible(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.s_parity != other.s_parity:
            raise InvalidParameterError("cannot add values with different s parity")
        low_z = min(self.z_exp, other.z_exp)
        low_mu = min(self.mu_exp, other.mu_exp)
        total = self._raise_to(low_z, low_mu) + other._raise_to(low_z, low_mu)
        return factor_value(total, low_z, low_mu, self.s_parity, self.params)

    def __sub__(self, other: "FactoredValue") -> "FactoredValue":
        return self + (-other)

    def _raise_to(self, low_z: int, low_mu: int) -> MultiLaurent:
        poly = self.core.shift("z", self.z_exp - low_z)
        if self.mu_exp > low_mu:
            poly = poly * self.params.mu() ** (self.mu_exp - low_mu)
        return poly

    def _check_compatible(self, other: "FactoredValue") -> None:
        if self.params != other.params:
            raise InvalidParameterError(f"incompatible value parameters {self.params} and {other.params}")

    def times_s(self, power: int) -> "FactoredValue":
        return factor_value(self.core, self.z_exp, self.mu_exp, self.s_parity + power, self.params)

    def as_fraction(self) -> Tuple[MultiLaurent, MultiLaurent]:
        """(numerator, denominator) in q and z, ignoring the s factor."""
        num, den = self.core, MultiLaurent.constant(1)
        num = num.shift("z", max(self.z_exp, 0))
        den = den.shift("z", max(-self.z_exp, 0))
        if self.mu_exp:
            mu_power = self.params.mu() ** abs(self.mu_exp)
            if self.mu_exp > 0:
                num = num * mu_power
            else:
                den = den * mu_power
        return num, den

    def evaluate_z(self, z_value) -> "MultiLaurent":
        """Expand with s absent (p must be 0) after substituting z."""
        if self.s_parity:
            raise InvalidParameterError("values with an odd s power do not expand to a Laurent polynomial")
        num, den = self.as_fraction()
        num = num.substitute("z", z_value)
        den = den.substitute("z", z_value)
        if not den.is_monomial():
            raise InvalidParameterError("denominator does not specialise to a unit")
        return num / den

    def serialize(self) -> str:
        """Canonical text form, stable across runs."""
        if self.is_zero:
            return "0"
        parts = [f"({self.core.serialize()})"]
        if self.z_exp:
            parts.append(f"z^{self.z_exp}")
        if self.mu_exp:
            parts.append(f"mu^{self.mu_exp}")
        if self.s_parity:
            parts.append("s")
        return "*".join(parts)

    __str__ = serialize


def factor_value(raw, z_shift: int = 0, mu_shift: int = 0, s_power: int = 0, params: ValueParams = ValueParams()) -> FactoredValue:
    """Bring ``raw * z^z_shift * mu^mu_shift * s^s_power`` to canonical form.

    Extracts the lowest z power, then every factor of mu, and normalises the s
    power to 0 or 1 through s^2 = mu / z.
    """
    raw = MultiLaurent.coerce(raw)
    if not raw:
        return FactoredValue(MultiLaurent(), 0, 0, 0, params)
    half, parity = divmod(s_power, 2)
    mu_shift += half
    z_shift -= half
    low, _ = raw.degree_bounds("z")
    core = raw.shift("z", -low)
    z_shift += low
    if params.e_d is not None:
        root = params.mu_root()
        while True:
            quotient = core.divide_by_linear("z", root)
            if quotient is None:
                break
            core = quotient
            mu_shift += 1
    return FactoredValue(core, z_shift, mu_shift, parity, params)


# ---------------------------------------------------------------------- λ-form


@dataclass(frozen=True)
class LambdaForm:
    numerator: MultiLaurent
    qdiff_exp: int = 0
    one_minus_exp: int = 0
    s_parity: int = 0
    params: ValueParams = ValueParams()

    def serialize(self) -> str:
        if not self.numerator:
            return "0"
        parts = [f"({self.numerator.serialize()})"]
        if self.qdiff_exp:
            parts.append(f"(q-q^-1)^{self.qdiff_exp}")
        if self.one_minus_exp:
            parts.append(f"(1-lam)^{self.one_minus_exp}")
        if self.s_parity:
            parts.append("s")
        return "*".join(parts)

    __str__ = serialize


def canonical_lambda_form(numerator: MultiLaurent, qdiff_exp: int, one_minus_exp: int, s_parity: int, params: ValueParams) -> LambdaForm:
    if not numerator:
        return LambdaForm(MultiLaurent(), 0, 0, 0, params)
    while True:
        quotient = numerator.divide_by_linear("lam", 1)
        if quotient is None:
            break
        # divide_by_linear divides by (lam - 1)
        numerator = -quotient
        one_minus_exp += 1
    while True:
        quotient = divide_by_q_diff(numerator)
        if quotient is None:
            break
        numerator = quotient
        qdiff_exp += 1
    return LambdaForm(numerator, qdiff_exp, one_minus_exp, s_parity, params)


def to_lambda_form(value: FactoredValue) -> LambdaForm:
    """Rewrite a factored value through z = c/(1 - lam), c = (q - q^-1) E."""
    params = value.params
    if params.e_d is None:
        raise UnsupportedKindError("λ-form needs an E-system constant")
    if value.is_zero:
        return LambdaForm(MultiLaurent(), 0, 0, 0, params)
    e_d = params.e_d
    coeffs = value.core.coefficients_in("z")
    top = max(coeffs)
    one_minus = 1 - LAM
    bracket = MultiLaurent()
    for k, a_k in coeffs.items():
        bracket = bracket + a_k * (Q_DIFF * e_d) ** k * one_minus ** (top - k)
    a, b = value.z_exp, value.mu_exp
    numerator = bracket * (MultiLaurent.constant(e_d) ** (a + b)) * LAM**b
    return canonical_lambda_form(numerator, a + b, -top - a - b, value.s_parity, params)


def from_lambda_form(form: LambdaForm) -> FactoredValue:
    """Inverse of :func:`to_lambda_form`."""
    params = form.params
    if not form.numerator:
        return FactoredValue(MultiLaurent(), 0, 0, 0, params)
    mu = params.mu()
    coeffs = form.numerator.coefficients_in("lam")
    low, high = min(coeffs), max(coeffs)
    rest = MultiLaurent()
    for j, n_j in coeffs.items():
        rest = rest + n_j * mu ** (j - low) * Z ** (high - j)
    c_power = form.qdiff_exp + form.one_minus_exp
    if c_power >= 0:
        rest = rest * Q_DIFF**c_power
    else:
        for _ in range(-c_power):
            quotient = divide_by_q_diff(rest)
            if quotient is None:
                raise InvalidParameterError("λ-form does not describe a Laurent value")
            rest = quotient
    rest = rest * MultiLaurent.constant(params.e_d) ** form.one_minus_exp
    return factor_value(rest, -high - form.one_minus_exp, low, form.s_parity, params)


def mirror_lambda_form(form: LambdaForm) -> LambdaForm:
    """Apply q -> 1/q, lam -> 1/lam to a λ-form.

    (q - q^-1) changes sign, s goes to s/lam and (1 - lam) becomes
    -(1 - lam)/lam.
    """
    num = form.numerator.substitute("q", Q_INV).substitute("lam", LAM**-1)
    num = num * (-1) ** (form.qdiff_exp % 2) * (-1) ** (form.one_minus_exp % 2)
    num = num * LAM ** (-form.one_minus_exp)
    if form.s_parity:
        num = num * LAM**-1
    return canonical_lambda_form(num, form.qdiff_exp, form.one_minus_exp, form.s_parity, form.params)
