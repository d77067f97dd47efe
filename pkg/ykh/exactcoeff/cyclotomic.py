"""Exact arithmetic in the d-th cyclotomic field Q(ζ_d).

Elements are stored as coordinates in the power basis 1, ζ, …, ζ^{φ(d)-1}
and kept reduced modulo the d-th cyclotomic polynomial, so two elements are
equal exactly when their coordinates are.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Tuple, Union

from ..utils.exceptions import InvalidParameterError

Scalar = Union[int, Fraction, "Cyclotomic"]


def _poly_divmod_exact(num: list, den: Sequence[int]) -> list:
    """Divide integer polynomials (low-to-high coefficients), asserting no remainder."""
    num = list(num)
    quotient = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(quotient) - 1, -1, -1):
        c = num[k + len(den) - 1] // lead
        quotient[k] = c
        for j, dj in enumerate(den):
            num[k + j] -= c * dj
    assert not any(num), "cyclotomic division left a remainder"
    return quotient


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> Tuple[int, ...]:
    """Return Φ_d as integer coefficients, lowest degree first.

    Computed by dividing x^d - 1 by Φ_e for every proper divisor e of d.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if d < 1:
        raise InvalidParameterError(f"cyclotomic conductor must be positive, got {d}")
    poly = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            poly = _poly_divmod_exact(poly, cyclotomic_polynomial(e))
    return tuple(poly)


def _reduce(d: int, raw: Sequence) -> Tuple[Fraction, ...]:
    """Remainder of a raw coefficient list modulo the monic Φ_d."""
    phi_poly = cyclotomic_polynomial(d)
    deg = len(phi_poly) - 1
    work = [Fraction(c) for c in raw] + [Fraction(0)] * max(0, deg - len(raw))
    for k in range(len(work) - 1, deg - 1, -1):
        c = work[k]
        if c:
            work[k] = Fraction(0)
            for j in range(deg):
                work[k - deg + j] -= c * phi_poly[j]
    return tuple(work[:deg])


class Cyclotomic:
    """An element of Q(ζ_d) in canonical (reduced) coordinates."""

    __slots__ = ("d", "coords", "_hash")

    def __init__(self, d: int, coords: Sequence = (0,)):
        if d < 1:
            raise InvalidParameterError(f"cyclotomic conductor must be positive, got {d}")
        self.d = d
        self.coords = _reduce(d, [Fraction(c) for c in coords])
        self._hash = None

    @classmethod
    def from_rational(cls, d: int, value) -> "Cyclotomic":
        return cls(d, (Fraction(value),))

    @property
    def degree(self) -> int:
        return len(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.d == self.d:
                return other
            if other.is_rational():
                return Cyclotomic.from_rational(self.d, other.coords[0])
            if self.is_rational():
                return None
            raise InvalidParameterError(f"cannot combine conductors {self.d} and {other.d}")
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.d, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic) and other.d != self.d:
            return self.is_rational() and other.is_rational() and self.coords[0] == other.coords[0]
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coords[0]) if self.is_rational() else hash((self.d, self.coords))
        return self._hash

    def __bool__(self) -> bool:
        return any(self.coords)

    def __add__(self, other) -> "Cyclotomic":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return other + self
        return Cyclotomic(self.d, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.d, [-a for a in self.coords])

    def __sub__(self, other) -> "Cyclotomic":
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        return (-self) + other

    def __mul__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.d, [a * other for a in self.coords])
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return other * self
        raw = [Fraction(0)] * (len(self.coords) + len(o.coords) - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(o.coords):
                if b:
                    raw[i + j] += a * b
        return Cyclotomic(self.d, raw)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Cyclotomic":
        if exponent < 0:
            return (self.inverse()) ** (-exponent)
        result = Cyclotomic.from_rational(self.d, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self, k: int) -> "Cyclotomic":
        """Apply the Galois automorphism ζ ↦ ζ^k (gcd(k, d) = 1)."""
        acc = Cyclotomic(self.d)
        for j, c in enumerate(self.coords):
            if c:
                acc = acc + zeta_power(self.d, j * k) * c
        return acc

    def norm(self) -> Fraction:
        """Product of all Galois conjugates; a nonzero rational for nonzero elements."""
        acc = Cyclotomic.from_rational(self.d, 1)
        for k in range(1, max(self.d, 2)):
            if gcd(k, self.d) == 1:
                acc = acc * self.conjugate(k)
        return acc.to_rational()

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if self.is_rational():
            return Cyclotomic.from_rational(self.d, 1 / self.coords[0])
        others = Cyclotomic.from_rational(self.d, 1)
        for k in range(2, self.d):
            if gcd(k, self.d) == 1:
                others = others * self.conjugate(k)
        return others * (1 / self.norm())

    def __truediv__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "Cyclotomic":
        return self.inverse() * other

    def serialize(self) -> str:
        """Canonical text form ``[a0,a1,...]ζ<d>``."""
        return "[" + ",".join(format_rational(c) for c in self.coords) + f"]ζ{self.d}"

    def __repr__(self) -> str:
        return f"Cyclotomic({self.serialize()})"

    __str__ = serialize


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@lru_cache(maxsize=None)
def zeta_power(d: int, k: int) -> Cyclotomic:
    """Canonical representation of ζ_d^k.

    >>> zeta_power(4, 2) == -1
    True
    """
    if d < 1:
        raise InvalidParameterError(f"cyclotomic conductor must be positive, got {d}")
    k %= d
    return Cyclotomic(d, [0] * k + [1])


def simplify_scalar(value):
    """Collapse rational cyclotomics to Fraction so equal values print identically."""
    if isinstance(value, Cyclotomic):
        return value.coords[0] if value.is_rational() else value
    if isinstance(value, int):
        return Fraction(value)
    return value
