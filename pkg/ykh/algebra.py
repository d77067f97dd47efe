"""The Yokonuma–Hecke algebra Y_{d,n}(q) in normal form.

Every element is a linear combination of basis monomials t_1^{k_1}..t_n^{k_n} g_w
with framings taken mod d and w a permutation. ``g_w`` is the product of
generators along the inductive reduced word of w (see :func:`inductive_word`);
any reduced word gives the same element, so monomials are keyed by the
permutation itself.

Permutations are tuples of 0-based images and compose as functions. The
framing relation reads ``g_w t_j = t_{w(j)} g_w``. Multiplication works from
the right, one generator at a time:

* ``t^k g_w · t_j`` moves t_j through g_w and lands on strand w(j);
* ``t^k g_w · g_i`` is ``t^k g_{w s_i}`` when the length grows, otherwise the
  quadratic relation g_i^2 = 1 + (q - q^-1) e_i g_i fires, with e_i expanded
  into its average of framings.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

from .braid import BRAIDING, BraidWord, FramedBraidWord, SingularBraidWord
from .exactcoeff.laurent import Q_DIFF, Q_INV, MultiLaurent, qsum
from .utils.exceptions import BasisTooLargeError, IndexOutOfRangeError, InvalidParameterError, SingularExponentError

ONE = MultiLaurent.constant(1)


class YMonomial(NamedTuple):
    """t^framings · g_perm."""

    framings: Tuple[int, ...]
    perm: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    def braid_word(self) -> List[int]:
        """1-based generator indices of the inductive reduced word."""
        return inductive_word(self.perm)

    def serialize(self) -> str:
        framing = " ".join(f"t{j + 1}" if k == 1 else f"t{j + 1}^{k}" for j, k in enumerate(self.framings) if k)
        braid = " ".join(f"g{i}" for i in self.braid_word())
        return " ".join(part for part in (framing, braid) if part) or "1"


@dataclass
class RewriteStats:
    """Counts of rewriting events, shared by the multiplications of one computation."""

    quadratic: int = 0
    multiplications: int = 0


def inductive_word(perm: Tuple[int, ...]) -> List[int]:
    """Inductive reduced word of a permutation, as 1-based generator indices.

    The word is built strand by strand: w_{k+1} = w_k · g_k g_{k-1} .. g_i, so
    the largest generator of a permutation of the first m strands occurs once.
    """
    perm = list(perm)
    tail: List[List[int]] = []
    for m in range(len(perm) - 1, 0, -1):
        i = perm.index(m)
        if i != m:
            tail.append(list(range(m, i, -1)))
            # u = w · s_i s_{i+1} .. s_{m-1} fixes m
            perm = perm[:i] + perm[i + 1 : m + 1] + perm[m + 1 :]
            perm.insert(m, m)
    word: List[int] = []
    for block in reversed(tail):
        word.extend(block)
    return word


def _inversions(perm: Tuple[int, ...]) -> int:
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


class YElement:
    """A finite linear combination of YMonomials with coefficients in q."""

    __slots__ = ("d", "n", "terms")

    def __init__(self, d: int, n: int, terms: Optional[Dict[YMonomial, MultiLaurent]] = None):
        if d < 1 or n < 1:
            raise InvalidParameterError(f"Y_(d,n) needs d >= 1 and n >= 1, got d={d}, n={n}")
        self.d = d
        self.n = n
        self.terms: Dict[YMonomial, MultiLaurent] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def identity(cls, d: int, n: int) -> "YElement":
        return cls(d, n, {YMonomial((0,) * n, tuple(range(n))): ONE})

    @classmethod
    def monomial(cls, d: int, framings: Iterable[int], perm: Iterable[int], coeff=ONE) -> "YElement":
        framings = tuple(k % d for k in framings)
        return cls(d, len(framings), {YMonomial(framings, tuple(perm)): MultiLaurent.coerce(coeff)})

    def _check(self, other: "YElement") -> None:
        if (self.d, self.n) != (other.d, other.n):
            raise InvalidParameterError(f"cannot combine elements of Y_({self.d},{self.n}) and Y_({other.d},{other.n})")

    def __add__(self, other: "YElement") -> "YElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return YElement(self.d, self.n, out)

    def __neg__(self) -> "YElement":
        return YElement(self.d, self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "YElement") -> "YElement":
        return self + (-other)

    def scale(self, factor) -> "YElement":
        return YElement(self.d, self.n, {m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other) -> "YElement":
        if isinstance(other, YElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "YElement":
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, YElement):
            return NotImplemented
        return (self.d, self.n) == (other.d, other.n) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def serialize(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms.items(), key=lambda item: (_inversions(item[0].perm), item[0].perm, item[0].framings))
        return " + ".join(f"({c.serialize()})*{m.serialize()}" for m, c in ordered)

    __str__ = serialize

    def __repr__(self) -> str:
        return f"YElement(d={self.d}, n={self.n}, {self.serialize()})"


# ------------------------------------------------------- right multiplication


def right_multiply_framing(element: YElement, j: int, power: int = 1) -> YElement:
    """element · t_{j+1}^power (j is 0-based)."""
    d = element.d
    if power % d == 0:
        return element
    out: Dict[YMonomial, MultiLaurent] = {}
    for (framings, perm), c in element.terms.items():
        k = list(framings)
        target = perm[j]
        k[target] = (k[target] + power) % d
        key = YMonomial(tuple(k), perm)
        out[key] = out[key] + c if key in out else c
    return YElement(d, element.n, out)


def right_multiply_generator(element: YElement, i: int, stats: Optional[RewriteStats] = None) -> YElement:
    """element · g_{i+1} (i is 0-based, swapping positions i and i+1)."""
    d = element.d
    if not 0 <= i < element.n - 1:
        raise IndexOutOfRangeError(f"generator g{i + 1} outside 1..{element.n - 1}")
    average = Q_DIFF * Fraction(1, d)
    out: Dict[YMonomial, MultiLaurent] = {}

    def accumulate(key: YMonomial, value: MultiLaurent) -> None:
        out[key] = out[key] + value if key in out else value

    for (framings, perm), c in element.terms.items():
        swapped = list(perm)
        swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
        swapped = tuple(swapped)
        if perm[i] < perm[i + 1]:
            accumulate(YMonomial(framings, swapped), c)
            continue
        # w = w' s_i with w' shorter: g_w g_i = g_w' + (q - q^-1) g_w' e_i g_i
        if stats is not None:
            stats.quadratic += 1
        accumulate(YMonomial(framings, swapped), c)
        a, b = swapped[i], swapped[i + 1]
        weighted = c * average
        for s in range(d):
            k = list(framings)
            k[a] = (k[a] + s) % d
            k[b] = (k[b] - s) % d
            accumulate(YMonomial(tuple(k), perm), weighted)
    return YElement(d, element.n, out)


def multiply(a: YElement, b: YElement, stats: Optional[RewriteStats] = None) -> YElement:
    """Normal-form product a · b."""
    a._check(b)
    if stats is not None:
        stats.multiplications += 1
    total = YElement(a.d, a.n)
    for (framings, perm), coeff in b.terms.items():
        part = a
        for j, k in enumerate(framings):
            if k:
                part = right_multiply_framing(part, j, k)
        for i in inductive_word(perm):
            part = right_multiply_generator(part, i - 1, stats)
        total = total + part.scale(coeff)
    return total


# ------------------------------------------------------------- named elements


def _check_generator(n: int, i: int) -> None:
    if not 1 <= i <= n - 1:
        raise IndexOutOfRangeError(f"generator index {i} outside 1..{n - 1}")


def transposition(n: int, i: int) -> Tuple[int, ...]:
    perm = list(range(n))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def gen_t(d: int, n: int, j: int, power: int = 1) -> YElement:
    if not 1 <= j <= n:
        raise IndexOutOfRangeError(f"framing index {j} outside 1..{n}")
    framings = [0] * n
    framings[j - 1] = power
    return YElement.monomial(d, framings, range(n))


@lru_cache(maxsize=1024)
def idempotent_e(d: int, n: int, i: int) -> YElement:
    """e_i = (1/d) Σ_s t_i^s t_{i+1}^{-s}."""
    _check_generator(n, i)
    weight = MultiLaurent.constant(Fraction(1, d))
    terms = {}
    for s in range(d):
        framings = [0] * n
        framings[i - 1] = s % d
        framings[i] = (-s) % d
        key = YMonomial(tuple(framings), tuple(range(n)))
        terms[key] = terms[key] + weight if key in terms else weight
    return YElement(d, n, terms)


def _power_closed_form(d: int, n: int, i: int, r: int, q_dual: bool) -> YElement:
    """(1 - e) g^{r mod 2} + A_r · e g + A_{r-1} · e for the element g or its inverse.

    With ``q_dual`` the coefficients use q -> q^-1 and g stands for
    g^-1 = g - (q - q^-1) e.
    """
    e = idempotent_e(d, n, i)
    g = YElement.monomial(d, [0] * n, transposition(n, i))
    one = YElement.identity(d, n)
    a_r, a_prev = qsum(r), qsum(r - 1)
    if q_dual:
        a_r, a_prev = a_r.substitute("q", Q_INV), a_prev.substitute("q", Q_INV)
        g = g - e.scale(Q_DIFF)
    eg = multiply(e, g)
    base = multiply(one - e, g) if r % 2 else one - e
    return base + eg.scale(a_r) + e.scale(a_prev)


@lru_cache(maxsize=1024)
def gen_g(d: int, n: int, i: int, exponent: int) -> YElement:
    """g_i^r in closed form.

    Positive powers follow the power formula directly; negative powers apply it
    to the inverse g_i^-1 = g_i - (q - q^-1) e_i, whose quadratic relation is
    the original one with q replaced by q^-1.
    """
    _check_generator(n, i)
    if exponent >= 0:
        return _power_closed_form(d, n, i, exponent, q_dual=False)
    return _power_closed_form(d, n, i, -exponent, q_dual=True)


@lru_cache(maxsize=1024)
def generator_inverse(d: int, n: int, i: int) -> YElement:
    """g_i^-1 = g_i - (q - q^-1) e_i."""
    _check_generator(n, i)
    g = YElement.monomial(d, [0] * n, transposition(n, i))
    return g - idempotent_e(d, n, i).scale(Q_DIFF)


# ------------------------------------------------------------------ embedding

EMBEDDINGS = ("gamma", "delta", "eta")


def _apply_power(element: YElement, i: int, exponent: int, power_formula: bool, stats: Optional[RewriteStats]) -> YElement:
    d, n = element.d, element.n
    if power_formula and exponent != 1:
        return multiply(element, gen_g(d, n, i, exponent), stats)
    if exponent > 0:
        for _ in range(exponent):
            element = right_multiply_generator(element, i - 1, stats)
        return element
    inverse = generator_inverse(d, n, i)
    for _ in range(-exponent):
        element = multiply(element, inverse, stats)
    return element


def embed(
    word: Union[BraidWord, FramedBraidWord, SingularBraidWord],
    map_kind: str,
    d: int,
    power_formula: bool = True,
    stats: Optional[RewriteStats] = None,
) -> YElement:
    """Image of a word under γ (framed), δ (classical) or η (singular).

    σ_i ↦ g_i, t_j ↦ t_j and τ_i ↦ e_i. Runs σ_i^r are collapsed through the
    power formula unless ``power_formula`` is false, in which case every letter
    is multiplied in separately.
    """
    expected = {"gamma": FramedBraidWord, "delta": BraidWord, "eta": SingularBraidWord}
    if map_kind not in expected:
        raise InvalidParameterError(f"unknown embedding {map_kind!r}; expected one of {', '.join(EMBEDDINGS)}")
    if map_kind == "gamma" and isinstance(word, BraidWord):
        word = FramedBraidWord.unframed(word)
    if map_kind == "eta" and isinstance(word, BraidWord):
        word = SingularBraidWord.from_classical(word)
    if not isinstance(word, expected[map_kind]):
        raise InvalidParameterError(f"embedding {map_kind} does not accept a {type(word).__name__}")

    if isinstance(word, FramedBraidWord):
        element = YElement.monomial(d, word.framings, range(word.strands))
        letters = [(BRAIDING, i, e) for i, e in word.word.letters]
    elif isinstance(word, SingularBraidWord):
        element = YElement.identity(d, word.strands)
        letters = list(word.letters)
    else:
        element = YElement.identity(d, word.strands)
        letters = [(BRAIDING, i, e) for i, e in word.letters]

    for kind, i, exponent in letters:
        if kind == BRAIDING:
            element = _apply_power(element, i, exponent, power_formula, stats)
        else:
            if exponent < 1:
                raise SingularExponentError(f"singular letter tau{i} needs a positive exponent")
            # e_i is idempotent, so τ_i^k ↦ e_i
            element = multiply(element, idempotent_e(d, element.n, i), stats)
    return element


def enumerate_basis(d: int, n: int, guard: int = 10**6) -> List[YMonomial]:
    """All n!·d^n basis monomials of Y_{d,n}."""
    if d < 1 or n < 1:
        raise InvalidParameterError(f"Y_(d,n) needs d >= 1 and n >= 1, got d={d}, n={n}")
    size = factorial(n) * d**n
    if size > guard:
        raise BasisTooLargeError(f"basis of Y_({d},{n}) has {size} elements, above the guard {guard}")
    return [YMonomial(tuple(k), tuple(w)) for w in permutations(range(n)) for k in product(range(d), repeat=n)]
