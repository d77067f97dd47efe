"""Truncated power series in h, used for the q = e^h expansion."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import List, Sequence

from ..utils.exceptions import SeriesExpansionError
from .factored import FactoredValue
from .laurent import MultiLaurent, Z


class TruncatedSeries:
    """c_0 + c_1 h + ... + c_N h^N with MultiLaurent coefficients."""

    __slots__ = ("order", "coefficients")

    def __init__(self, order: int, coefficients: Sequence = ()):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        coeffs: List[MultiLaurent] = [MultiLaurent.coerce(c) for c in list(coefficients)[: order + 1]]
        coeffs += [MultiLaurent()] * (order + 1 - len(coeffs))
        self.order = order
        self.coefficients = tuple(coeffs)

    @classmethod
    def constant(cls, order: int, value) -> "TruncatedSeries":
        return cls(order, [value])

    def __getitem__(self, index: int) -> MultiLaurent:
        return self.coefficients[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(order, [a + b for a, b in zip(self.coefficients[: order + 1], other.coefficients)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [-c for c in self.coefficients])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.order, [c * other for c in self.coefficients])
        order = min(self.order, other.order)
        out = [MultiLaurent() for _ in range(order + 1)]
        for i, a in enumerate(self.coefficients[: order + 1]):
            if not a:
                continue
            for j in range(order + 1 - i):
                b = other.coefficients[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(order, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = TruncatedSeries.constant(self.order, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def valuation(self) -> int:
        """Index of the first nonzero coefficient, or order + 1 for zero."""
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return self.order + 1

    def _split_constant(self):
        head = self.coefficients[0]
        if not head.is_monomial():
            raise SeriesExpansionError(f"constant term {head} is not a unit")
        head_inv = head**-1
        tail = TruncatedSeries(self.order, [MultiLaurent()] + [c * head_inv for c in self.coefficients[1:]])
        return head, tail

    def inverse(self) -> "TruncatedSeries":
        """1 / self for a series whose constant term is a unit."""
        head, tail = self._split_constant()
        # 1/(1 + u) = sum (-u)^j, and u^j starts at h^j
        total = TruncatedSeries.constant(self.order, 1)
        power = TruncatedSeries.constant(self.order, 1)
        for _ in range(self.order):
            power = power * (-tail)
            total = total + power
        return total * head**-1

    def sqrt(self) -> "TruncatedSeries":
        """Square root on the branch with constant term +1."""
        if self.coefficients[0] != 1:
            raise SeriesExpansionError(f"square root needs constant term 1, got {self.coefficients[0]}")
        _, tail = self._split_constant()
        total = TruncatedSeries.constant(self.order, 1)
        power = TruncatedSeries.constant(self.order, 1)
        binomial = Fraction(1)
        for j in range(1, self.order + 1):
            binomial = binomial * (Fraction(1, 2) - (j - 1)) / j
            power = power * tail
            total = total + power * binomial
        return total

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.serialize()})"

    def serialize(self) -> str:
        return "; ".join(f"h^{i}: {c.serialize()}" for i, c in enumerate(self.coefficients))


def series_exp_substitution(poly, order: int) -> TruncatedSeries:
    """Substitute q = e^h into a Laurent polynomial and truncate at h^order.

    Variables other than q stay in the coefficients.
    """
    if order < 0:
        raise ValueError("truncation order must be non-negative")
    poly = MultiLaurent.coerce(poly)
    coefficients = [MultiLaurent() for _ in range(order + 1)]
    for k, part in poly.coefficients_in("q").items():
        for j in range(order + 1):
            scale = Fraction(k**j, factorial(j))
            if scale:
                coefficients[j] = coefficients[j] + part * scale
    return TruncatedSeries(order, coefficients)


def expand_factored(value: FactoredValue, order: int) -> TruncatedSeries:
    """Series of ``core * z^a * mu^b * s^p`` at q = e^h.

    ``lam = mu / z`` equals 1 at h = 0, so s is expanded on the branch with
    constant term +1.
    """
    series = series_exp_substitution(value.core, order)
    if value.z_exp:
        series = series * Z**value.z_exp
    if value.mu_exp or value.s_parity:
        mu = series_exp_substitution(value.params.mu(), order)
        if value.mu_exp:
            series = series * mu**value.mu_exp
        if value.s_parity:
            lam = mu * Z**-1
            if lam.coefficients[0] != 1:
                raise SeriesExpansionError("lam does not reduce to 1 at h = 0")
            series = series * lam.sqrt()
    return series
