"""Multivariate Laurent polynomials with exact coefficients.

``MultiLaurent`` is the coefficient type used throughout the engine: algebra
elements carry coefficients in q, traces produce polynomials in q, z and the
x variables, and invariants live in q, z (or λ). Instances are immutable and
always canonical: zero coefficients are dropped, unused variables are dropped
and rational cyclotomic numbers are collapsed to ``Fraction``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from ..utils.exceptions import InvalidParameterError
from .cyclotomic import Cyclotomic, format_rational, simplify_scalar

Coefficient = Union[Fraction, Cyclotomic]
Exponents = Tuple[int, ...]

_X_VARIABLE = re.compile(r"^x(\d+)$")
# trace variables and the series parameter only ever appear with non-negative powers
_NONNEGATIVE = re.compile(r"^(x\d+|h)$")


def variable_sort_key(name: str) -> tuple:
    """Canonical variable order: q, z, lam, x1, x2, ..., other names, h."""
    fixed = {"q": 0, "z": 1, "lam": 2}
    if name in fixed:
        return (fixed[name], 0, "")
    match = _X_VARIABLE.match(name)
    if match:
        return (3, int(match.group(1)), "")
    if name == "h":
        return (5, 0, "")
    return (4, 0, name)


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, Cyclotomic))


class MultiLaurent:
    """A Laurent polynomial in named variables over Q or Q(ζ_d)."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exponents, object]] = None, variables: Iterable[str] = ()):
        variables = tuple(variables)
        cleaned: Dict[Exponents, Coefficient] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != len(variables):
                raise ValueError(f"exponent tuple {exps} does not match variables {variables}")
            if coeff:
                cleaned[tuple(exps)] = simplify_scalar(coeff)
        used = [i for i in range(len(variables)) if any(e[i] for e in cleaned)]
        if len(used) != len(variables):
            variables = tuple(variables[i] for i in used)
            cleaned = {tuple(e[i] for i in used): c for e, c in cleaned.items()}
        for i, name in enumerate(variables):
            if _NONNEGATIVE.match(name) and any(e[i] < 0 for e in cleaned):
                raise InvalidParameterError(f"variable {name} may not carry a negative exponent")
        self.variables: Tuple[str, ...] = variables
        self.terms: Dict[Exponents, Coefficient] = cleaned
        self._hash = None

    # ------------------------------------------------------------------ builders

    @classmethod
    def zero(cls) -> "MultiLaurent":
        return cls()

    @classmethod
    def constant(cls, value) -> "MultiLaurent":
        return cls({(): value}, ())

    @classmethod
    def variable(cls, name: str) -> "MultiLaurent":
        return cls({(1,): Fraction(1)}, (name,))

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff=Fraction(1)) -> "MultiLaurent":
        names = tuple(sorted(exponents, key=variable_sort_key))
        return cls({tuple(exponents[n] for n in names): coeff}, names)

    @classmethod
    def coerce(cls, value) -> "MultiLaurent":
        if isinstance(value, MultiLaurent):
            return value
        if _is_scalar(value):
            return cls.constant(value)
        raise TypeError(f"cannot interpret {value!r} as a Laurent polynomial")

    # ------------------------------------------------------------------ queries

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.variables

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def to_scalar(self) -> Coefficient:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms[()]

    def degree_bounds(self, var: str) -> Tuple[int, int]:
        """(lowest, highest) power of ``var``; (0, 0) when absent."""
        if var not in self.variables or not self.terms:
            return (0, 0)
        i = self.variables.index(var)
        powers = [e[i] for e in self.terms]
        return (min(powers), max(powers))

    @property
    def conductor(self) -> int:
        """1 for rational coefficients, otherwise the cyclotomic conductor in use."""
        for c in self.terms.values():
            if isinstance(c, Cyclotomic):
                return c.d
        return 1

    # ------------------------------------------------------------------ arithmetic

    def _align(self, other: "MultiLaurent"):
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        names = tuple(sorted(set(self.variables) | set(other.variables), key=variable_sort_key))
        return names, _remap(self, names), _remap(other, names)

    def __add__(self, other) -> "MultiLaurent":
        if not isinstance(other, MultiLaurent):
            if not _is_scalar(other):
                return NotImplemented
            other = MultiLaurent.constant(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        names, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            out[e] = out[e] + c if e in out else c
        return MultiLaurent(out, names)

    __radd__ = __add__

    def __neg__(self) -> "MultiLaurent":
        return MultiLaurent({e: -c for e, c in self.terms.items()}, self.variables)

    def __sub__(self, other) -> "MultiLaurent":
        if not isinstance(other, MultiLaurent) and not _is_scalar(other):
            return NotImplemented
        return self + (-MultiLaurent.coerce(other))

    def __rsub__(self, other) -> "MultiLaurent":
        return MultiLaurent.coerce(other) - self

    def __mul__(self, other) -> "MultiLaurent":
        if _is_scalar(other):
            if not other:
                return MultiLaurent()
            return MultiLaurent({e: c * other for e, c in self.terms.items()}, self.variables)
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        if not self.terms or not other.terms:
            return MultiLaurent()
        names, a, b = self._align(other)
        out: Dict[Exponents, Coefficient] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                out[e] = out[e] + prod if e in out else prod
        return MultiLaurent(out, names)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiLaurent":
        """Division by a nonzero scalar or by a single-term polynomial."""
        if _is_scalar(other):
            inverse = Fraction(1) / other if isinstance(other, (int, Fraction)) else other.inverse()
            return self * inverse
        if isinstance(other, MultiLaurent) and other.is_monomial():
            return self * other ** -1
        return NotImplemented

    def __pow__(self, exponent: int) -> "MultiLaurent":
        if exponent < 0:
            if not self.is_monomial():
                raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
            ((e, c),) = self.terms.items()
            inv = Fraction(1) / c if isinstance(c, Fraction) else c.inverse()
            return MultiLaurent({tuple(-x for x in e): inv}, self.variables) ** (-exponent)
        result = MultiLaurent.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if _is_scalar(other):
            other = MultiLaurent.constant(other)
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # ------------------------------------------------------------------ structure

    def coefficients_in(self, var: str) -> Dict[int, "MultiLaurent"]:
        """Split into {power of var: coefficient polynomial free of var}."""
        if var not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(var)
        rest = self.variables[:i] + self.variables[i + 1 :]
        buckets: Dict[int, Dict[Exponents, Coefficient]] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        return {k: MultiLaurent(v, rest) for k, v in buckets.items()}

    @classmethod
    def from_coefficients(cls, var: str, coefficients: Mapping[int, "MultiLaurent"]) -> "MultiLaurent":
        total = cls()
        for power, coeff in coefficients.items():
            if power:
                total = total + coeff * cls.monomial({var: power})
            else:
                total = total + coeff
        return total

    def shift(self, var: str, power: int) -> "MultiLaurent":
        """Multiply by var**power."""
        if not power:
            return self
        return self * MultiLaurent.monomial({var: power})

    def scale_variable(self, var: str, factor) -> "MultiLaurent":
        """Substitute var -> factor*var for a scalar factor."""
        if var not in self.variables:
            return self
        i = self.variables.index(var)
        factor = simplify_scalar(factor)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            scale = factor**k if k >= 0 else (Fraction(1) / factor if isinstance(factor, Fraction) else factor.inverse()) ** (-k)
            out[e] = c * scale
        return MultiLaurent(out, self.variables)

    def substitute(self, var: str, value) -> "MultiLaurent":
        """Replace ``var`` by a polynomial or scalar.

        Negative powers of ``var`` require ``value`` to be a unit (a scalar or a
        single-term polynomial).
        """
        if var not in self.variables:
            return self
        value = MultiLaurent.coerce(value)
        powers: Dict[int, MultiLaurent] = {}
        total = MultiLaurent()
        for k, coeff in self.coefficients_in(var).items():
            if k not in powers:
                powers[k] = value**k
            total = total + coeff * powers[k]
        return total

    def evaluate(self, assignments: Mapping[str, object]) -> "MultiLaurent":
        result = self
        for var, value in assignments.items():
            result = result.substitute(var, value)
        return result

    def map_coefficients(self, fn) -> "MultiLaurent":
        return MultiLaurent({e: fn(c) for e, c in self.terms.items()}, self.variables)

    def divide_by_linear(self, var: str, root) -> Optional["MultiLaurent"]:
        """Exact quotient by (var - root), or None when it does not divide.

        ``root`` must not involve ``var``. Works by synthetic division of the
        polynomial part after clearing the lowest power of ``var``.
        """
        root = MultiLaurent.coerce(root)
        if var in root.variables:
            raise ValueError(f"root may not involve {var}")
        if not self.terms:
            return MultiLaurent()
        if not root.terms:
            return self.shift(var, -1)
        coeffs = self.coefficients_in(var)
        low, high = min(coeffs), max(coeffs)
        if high == low:
            return None
        quotient: Dict[int, MultiLaurent] = {}
        carry = MultiLaurent()
        for k in range(high, low, -1):
            carry = coeffs.get(k, MultiLaurent()) + root * carry
            quotient[k - 1] = carry
        remainder = coeffs.get(low, MultiLaurent()) + root * carry
        if remainder:
            return None
        return MultiLaurent.from_coefficients(var, quotient)

    # ------------------------------------------------------------------ printing

    def sorted_terms(self):
        """Terms in graded-lex order: higher total degree first, then lexicographically larger."""
        return sorted(self.terms.items(), key=lambda item: (-sum(item[0]), tuple(-x for x in item[0])))

    def serialize(self) -> str:
        """Canonical, byte-stable text form."""
        if not self.terms:
            return "0"
        parts = []
        for idx, (exps, coeff) in enumerate(self.sorted_terms()):
            monomial = "*".join(_power_text(v, e) for v, e in zip(self.variables, exps) if e)
            if isinstance(coeff, Fraction):
                negative = coeff < 0
                magnitude = -coeff if negative else coeff
                text = monomial if (magnitude == 1 and monomial) else format_rational(magnitude) + ("*" + monomial if monomial else "")
                sign = "-" if negative else "+"
                parts.append((f"-{text}" if negative else text) if idx == 0 else f" {sign} {text}")
            else:
                text = coeff.serialize() + ("*" + monomial if monomial else "")
                parts.append(text if idx == 0 else f" + {text}")
        return "".join(parts)

    __str__ = serialize

    def __repr__(self) -> str:
        return f"MultiLaurent({self.serialize()})"


def _power_text(var: str, exp: int) -> str:
    return var if exp == 1 else f"{var}^{exp}"


def _remap(poly: MultiLaurent, names: Tuple[str, ...]) -> Dict[Exponents, Coefficient]:
    index = [poly.variables.index(n) if n in poly.variables else -1 for n in names]
    return {tuple(e[i] if i >= 0 else 0 for i in index): c for e, c in poly.terms.items()}


Q = MultiLaurent.variable("q")
Z = MultiLaurent.variable("z")
Q_INV = MultiLaurent.monomial({"q": -1})
Q_DIFF = Q - Q_INV  # q - q^-1


def x_variable(k: int) -> MultiLaurent:
    return MultiLaurent.variable(f"x{k}")


def divide_by_q_diff(poly: MultiLaurent) -> Optional[MultiLaurent]:
    """Exact quotient by (q - q^-1), or None."""
    first = poly.divide_by_linear("q", 1)
    if first is None:
        return None
    second = first.divide_by_linear("q", -1)
    if second is None:
        return None
    return second.shift("q", 1)


def qsum(m: int) -> MultiLaurent:
    """(q^m - (-1)^m q^-m) / (q + q^-1) as an explicit Laurent polynomial.

    For m >= 0 this is the alternating sum of q^{m-1-2j}; negative m uses
    qsum(-m) = -(-1)^m qsum(m).
    """
    if m < 0:
        sign = -1 if m % 2 == 0 else 1
        return qsum(-m) * sign
    terms = {(m - 1 - 2 * j,): Fraction((-1) ** j) for j in range(m)}
    return MultiLaurent(terms, ("q",))
