"""Link invariants built from the specialized and generic traces.

Φ, Θ, P and Ψ are ``Λ^{n-1} s^ε tr_{d,D}(word)`` with Λ = 1/(z s); since
s^2 = λ = μ/z that is ``z^{-(n-1)} s^{ε-n+1} tr``, which is handed straight
to :func:`factor_value`. M is the transverse invariant
``z^{-(n-1)} tr_d(t^{sl} α)`` with the x variables kept.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import structlog

from .braid import (
    BRAIDING,
    SINGULAR,
    BraidWord,
    FramedBraidWord,
    SingularBraidWord,
    closure_components,
    disjoint_union,
    exponent_sum,
    stabilize,
    to_transverse_framed,
)
from .esystem import normalize_subset
from .exactcoeff.factored import (
    FactoredValue,
    LambdaForm,
    ValueParams,
    factor_value,
    from_lambda_form,
    mirror_lambda_form,
    to_lambda_form,
)
from .exactcoeff.laurent import Q_DIFF, MultiLaurent
from .exactcoeff.series import TruncatedSeries, expand_factored
from .trace import TraceEngine
from .utils.exceptions import InvalidParameterError, PropertyCheckError, UnsupportedKindError

logger = structlog.get_logger(__name__)

KINDS = ("phi", "theta", "homflypt", "psi", "m")


@dataclass(frozen=True)
class InvariantValue:
    """An invariant of a closed braid together with the data it came from."""

    kind: str
    d: int
    D: Optional[Tuple[int, ...]]
    value: Union[FactoredValue, MultiLaurent]
    epsilon: int
    strands: int
    components: int

    @property
    def parity(self) -> int:
        return self.value.s_parity if isinstance(self.value, FactoredValue) else 0

    def serialize(self) -> str:
        return self.value.serialize()

    def lambda_form(self) -> LambdaForm:
        if not isinstance(self.value, FactoredValue):
            raise UnsupportedKindError(f"invariant {self.kind} has no λ-form")
        return to_lambda_form(self.value)


@lru_cache(maxsize=None)
def default_engine() -> TraceEngine:
    return TraceEngine("memo")


def _engine(engine: Optional[TraceEngine]) -> TraceEngine:
    return engine or default_engine()


def lambda_unit(params: ValueParams) -> FactoredValue:
    """Λ = 1/(z s)."""
    return factor_value(1, z_shift=-1, s_power=-1, params=params)


def _normalized(d: int, subset: Iterable[int]) -> Tuple[Tuple[int, ...], ValueParams]:
    members = normalize_subset(d, subset)
    return members, ValueParams.for_subset(d, len(members))


def _rescaled(kind: str, d: int, subset, word, engine: Optional[TraceEngine]) -> InvariantValue:
    members, params = _normalized(d, subset)
    trace = _engine(engine).trace_specialized(d, members, word).value
    n = word.strands
    epsilon = exponent_sum(word)
    value = factor_value(trace, z_shift=-(n - 1), s_power=epsilon - n + 1, params=params)
    components = closure_components(word).count
    return InvariantValue(kind, d, members, value, epsilon, n, components)


def phi(d: int, subset: Iterable[int], word: FramedBraidWord, engine: Optional[TraceEngine] = None) -> InvariantValue:
    """Φ_{d,D} of a framed braid closure."""
    if isinstance(word, BraidWord):
        word = FramedBraidWord.unframed(word)
    if not isinstance(word, FramedBraidWord):
        raise InvalidParameterError(f"phi needs a framed word, got {type(word).__name__}")
    return _rescaled("phi", d, subset, word, engine)


def theta(d: int, subset: Iterable[int], word: BraidWord, engine: Optional[TraceEngine] = None) -> InvariantValue:
    """Θ_{d,D} of a classical braid closure."""
    if not isinstance(word, BraidWord):
        raise InvalidParameterError(f"theta needs a classical word, got {type(word).__name__}")
    return _rescaled("theta", d, subset, word, engine)


def homflypt(word: BraidWord, engine: Optional[TraceEngine] = None) -> InvariantValue:
    """The Homflypt polynomial P = Θ_{1,{0}}."""
    value = theta(1, (0,), word, engine)
    return InvariantValue("homflypt", 1, (0,), value.value, value.epsilon, value.strands, value.components)


def psi(d: int, subset: Iterable[int], word: SingularBraidWord, engine: Optional[TraceEngine] = None) -> InvariantValue:
    """Ψ_{d,D} of a singular braid closure (τ_i ↦ e_i)."""
    if isinstance(word, BraidWord):
        word = SingularBraidWord.from_classical(word)
    if not isinstance(word, SingularBraidWord):
        raise InvalidParameterError(f"psi needs a singular word, got {type(word).__name__}")
    return _rescaled("psi", d, subset, word, engine)


def transverse_m(d: int, word: BraidWord, engine: Optional[TraceEngine] = None) -> InvariantValue:
    """M_d = z^{-(n-1)} tr_d(t^{sl} α) with generic x variables."""
    if not isinstance(word, BraidWord):
        raise InvalidParameterError(f"the transverse invariant needs a classical word, got {type(word).__name__}")
    framed = to_transverse_framed(word)
    trace = _engine(engine).trace_generic(d, framed).value
    value = trace.shift("z", -(word.strands - 1))
    return InvariantValue("m", d, None, value, exponent_sum(word), word.strands, closure_components(word).count)


def rescaled_transverse(d: int, subset: Iterable[int], word: BraidWord, engine: Optional[TraceEngine] = None) -> FactoredValue:
    """s^{ε-n+1} times M_d with the x variables specialized to the solution for D.

    For every word this coincides with Φ_{d,D} of t^{sl} α.
    """
    members, params = _normalized(d, subset)
    framed = to_transverse_framed(word)
    trace = _engine(engine).trace_specialized(d, members, framed).value
    return factor_value(trace, z_shift=-(word.strands - 1), s_power=exponent_sum(word) - word.strands + 1, params=params)


def compute(kind: str, word, d: int = 1, subset: Optional[Iterable[int]] = None, engine: Optional[TraceEngine] = None) -> InvariantValue:
    """Dispatch on the invariant kind."""
    if kind not in KINDS:
        raise InvalidParameterError(f"unknown invariant kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == "homflypt":
        return homflypt(word, engine)
    if kind == "m":
        return transverse_m(d, word, engine)
    subset = (0,) if subset is None and d == 1 else subset
    if subset is None:
        raise InvalidParameterError(f"invariant {kind} needs a subset D for d={d}")
    return {"phi": phi, "theta": theta, "psi": psi}[kind](d, subset, word, engine)


# ----------------------------------------------------------------- skein checks


def skein_residual_framed(d: int, subset: Iterable[int], beta: FramedBraidWord, i: int, engine: Optional[TraceEngine] = None) -> FactoredValue:
    """(1/s)Φ(L+) - sΦ(L-) - ((q - q^-1)/d) Σ_s Φ(L_s); zero for every β and i.

    L± close β σ_i^{±1} and L_s closes β t_i^s t_{i+1}^{d-s}.
    """
    if isinstance(beta, BraidWord):
        beta = FramedBraidWord.unframed(beta)
    n = beta.strands
    if not 1 <= i <= n - 1:
        raise InvalidParameterError(f"skein index {i} outside 1..{n - 1}")
    plus = phi(d, subset, beta * FramedBraidWord.unframed(BraidWord(n, ((i, 1),))), engine).value
    minus = phi(d, subset, beta * FramedBraidWord.unframed(BraidWord(n, ((i, -1),))), engine).value
    residual = plus.times_s(-1) - minus.times_s(1)
    weight = Q_DIFF * Fraction(1, d)
    for s in range(d):
        smoothed = FramedBraidWord.from_sequence(n, beta.items() + [("t", i, s), ("t", i + 1, d - s)])
        residual = residual - phi(d, subset, smoothed, engine).value * weight
    return residual


def skein_residual_singular(d: int, subset: Iterable[int], beta: SingularBraidWord, i: int, engine: Optional[TraceEngine] = None) -> FactoredValue:
    """(1/s)Ψ(L+) - sΨ(L-) - ((q - q^-1)/s)Ψ(L×); zero for every β and i."""
    if isinstance(beta, BraidWord):
        beta = SingularBraidWord.from_classical(beta)
    n = beta.strands
    if not 1 <= i <= n - 1:
        raise InvalidParameterError(f"skein index {i} outside 1..{n - 1}")
    plus = psi(d, subset, beta * SingularBraidWord(n, ((BRAIDING, i, 1),)), engine).value
    minus = psi(d, subset, beta * SingularBraidWord(n, ((BRAIDING, i, -1),)), engine).value
    singular = psi(d, subset, beta * SingularBraidWord(n, ((SINGULAR, i, 1),)), engine).value
    return plus.times_s(-1) - minus.times_s(1) - singular.times_s(-1) * Q_DIFF


# ------------------------------------------------------------------ transforms


def mirror_transform(value: InvariantValue) -> InvariantValue:
    """Θ(q, λ) ↦ Θ(q^-1, λ^-1), computed on the λ-form and re-factored."""
    if value.kind not in ("theta", "homflypt"):
        raise UnsupportedKindError(f"no mirror law is available for invariant {value.kind}")
    mirrored = from_lambda_form(mirror_lambda_form(to_lambda_form(value.value)))
    return InvariantValue(value.kind, value.d, value.D, mirrored, -value.epsilon, value.strands, value.components)


def rescale_homflypt(value: FactoredValue, params: ValueParams) -> FactoredValue:
    """P(q, z/E_D) as a factored value with the μ and s of ``params``.

    z ↦ z/E sends μ_H to μ_D/E and leaves λ, hence s, in place.
    """
    e_d = params.e_d
    core = value.core.scale_variable("z", 1 / e_d)
    return factor_value(core * e_d ** (-value.z_exp - value.mu_exp), value.z_exp, value.mu_exp, value.s_parity, params)


@dataclass(frozen=True)
class ComparisonOutcome:
    status: str
    knot: bool
    equal: bool
    theta: FactoredValue
    rescaled_homflypt: FactoredValue
    lambda_path_equal: bool


def compare_theta_homflypt(word: BraidWord, d: int, subset: Iterable[int], engine: Optional[TraceEngine] = None) -> ComparisonOutcome:
    """Compare Θ_{d,D}(q, z) with P(q, z/E_D).

    Knots must agree and a mismatch raises; for links the outcome is only
    reported. The comparison runs both in (q, z) and through the λ-forms.
    """
    members, params = _normalized(d, subset)
    theta_value = theta(d, members, word, engine)
    p_value = homflypt(word, engine).value
    rescaled = rescale_homflypt(p_value, params)
    equal = rescaled == theta_value.value

    p_form = to_lambda_form(p_value)
    reinterpreted = from_lambda_form(LambdaForm(p_form.numerator, p_form.qdiff_exp, p_form.one_minus_exp, p_form.s_parity, params))
    lambda_equal = reinterpreted == theta_value.value
    if lambda_equal != equal:
        raise PropertyCheckError(f"z and λ comparison paths disagree on {word.serialize()}")

    knot = theta_value.components == 1
    if knot and not equal:
        logger.error("theta differs from rescaled homflypt on a knot", word=word.serialize(), d=d, D=list(members))
        raise PropertyCheckError(f"Θ_(d={d},D={set(members)}) differs from P(q, z/E) on the knot {word.serialize()}")
    status = "knot_match" if knot else ("link_equal" if equal else "link_differ")
    return ComparisonOutcome(status, knot, equal, theta_value.value, rescaled, lambda_equal)


def split_product_check(d: int, subset: Iterable[int], words: Sequence, engine: Optional[TraceEngine] = None) -> bool:
    """Φ(L_1 ⊔ .. ⊔ L_m) = Λ^{m-1} Φ(L_1)..Φ(L_m)."""
    if not words:
        raise InvalidParameterError("a split link needs at least one part")
    members, params = _normalized(d, subset)
    parts = [w if isinstance(w, FramedBraidWord) else FramedBraidWord.unframed(w) for w in words]
    union = parts[0]
    for part in parts[1:]:
        union = disjoint_union(union, part)
    left = phi(d, members, union, engine).value
    right = factor_value(1, params=params)
    for part in parts:
        right = right * phi(d, members, part, engine).value
    for _ in range(len(parts) - 1):
        right = right * lambda_unit(params)
    return left == right


def ocneanu_relation(k: int, d: int, subset: Iterable[int], engine: Optional[TraceEngine] = None) -> Tuple[MultiLaurent, MultiLaurent]:
    """Both sides of tr_{d,D}(σ_1^{2k}) = 1 - E + E·τ(σ_1^{2k})(q, z/E).

    τ is the d = 1 trace.
    """
    members, params = _normalized(d, subset)
    engine = _engine(engine)
    word = BraidWord(2, ((1, 2 * k),))
    left = engine.trace_specialized(d, members, word).value
    tau = engine.trace_specialized(1, (0,), word).value
    e_d = params.e_d
    right = 1 - MultiLaurent.constant(e_d) + tau.scale_variable("z", 1 / e_d) * e_d
    return left, right


# -------------------------------------------------------------------- Vassiliev


def resolutions(word: SingularBraidWord) -> List[Tuple[int, BraidWord]]:
    """Signed classical words from τ_i ↦ σ_i - σ_i^{-1} at every singular point."""
    singular_positions = []
    letters = []
    for kind, i, e in word.letters:
        if kind == SINGULAR:
            for _ in range(e):
                singular_positions.append(len(letters))
                letters.append((i, None))
        else:
            letters.append((i, e))
    out = []
    for signs in product((1, -1), repeat=len(singular_positions)):
        resolved = list(letters)
        for pos, sign in zip(singular_positions, signs):
            resolved[pos] = (resolved[pos][0], sign)
        sign_product = 1
        for sign in signs:
            sign_product *= sign
        out.append((sign_product, BraidWord(word.strands, tuple(resolved))))
    return out


def vassiliev_value(d: int, subset: Iterable[int], word: SingularBraidWord, engine: Optional[TraceEngine] = None) -> FactoredValue:
    """Θ extended to singular links through L× = L+ - L-.

    The extension is taken of Θ_{d,D}, so it carries (d, D) and lives in the
    factored (q, z) values. The transverse invariant M_d extends the same way
    over the generic x-parameters; that variant is not built here.
    """
    if isinstance(word, BraidWord):
        word = SingularBraidWord.from_classical(word)
    members, params = _normalized(d, subset)
    total = factor_value(0, params=params)
    for sign, resolved in resolutions(word):
        value = theta(d, members, resolved, engine).value
        total = total + (value if sign > 0 else -value)
    return total


def vassiliev_coefficients(d: int, subset: Iterable[int], word: SingularBraidWord, order: int = 4, engine: Optional[TraceEngine] = None) -> TruncatedSeries:
    """h-expansion (q = e^h) of the singular extension, truncated at h^order.

    A word with k singular points yields a series whose coefficients below h^k
    vanish.
    """
    value = vassiliev_value(d, subset, word, engine)
    series = expand_factored(value, order)
    logger.debug("vassiliev expansion", word=word.serialize(), order=order, valuation=series.valuation())
    return series


def stabilization_report(d: int, word: BraidWord, engine: Optional[TraceEngine] = None) -> dict:
    """Compare M_d of a word with both of its stabilizations (positive must agree)."""
    base = transverse_m(d, word, engine).value
    positive = transverse_m(d, stabilize(word, 1), engine).value
    negative = transverse_m(d, stabilize(word, -1), engine).value
    return {"positive_equal": base == positive, "negative_equal": base == negative}
