"""Property suites run by ``ykh verify``.

Each suite checks one family of exact identities on fixed and random words
and returns the number of checks it made. A violated identity raises
:class:`PropertyCheckError`, which the command line turns into exit code 2.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Sequence, Tuple

import structlog

from .algebra import enumerate_basis, gen_g, generator_inverse, multiply
from .braid import (
    SINGULAR,
    BraidWord,
    FramedBraidWord,
    SingularBraidWord,
    conjugate,
    connected_sum,
    mirror,
    parse_word,
    reverse,
    stabilize,
)
from .catalog import NG_PRESENTATIONS, instantiate
from .esystem import is_character_solution, list_solutions, solve, verify
from .exactcoeff.laurent import MultiLaurent, Z, qsum
from .invariants import (
    compare_theta_homflypt,
    mirror_transform,
    ocneanu_relation,
    phi,
    psi,
    skein_residual_framed,
    skein_residual_singular,
    split_product_check,
    stabilization_report,
    theta,
    transverse_m,
    vassiliev_coefficients,
)
from .trace import TraceEngine
from .utils.config import STRATEGIES
from .utils.exceptions import InvalidParameterError, PropertyCheckError

logger = structlog.get_logger(__name__)


@dataclass
class SuiteContext:
    """What every suite runs against."""

    d: int
    engine: TraceEngine
    rng: random.Random
    count: int = 5
    basis_guard: int = 10**6
    series_order: int = 4
    subsets: List[Tuple[int, ...]] = field(default_factory=list)

    def __post_init__(self):
        if not self.subsets:
            self.subsets = [sol.D for sol in list_solutions(self.d)]


def _fail(message: str, **context) -> None:
    logger.error("property check failed", check=message, **context)
    raise PropertyCheckError(message)


# ------------------------------------------------------------- random words


def random_classical(rng: random.Random, strands: int, length: int) -> BraidWord:
    letters = tuple((rng.randint(1, strands - 1), rng.choice((-2, -1, 1, 2))) for _ in range(length))
    return BraidWord(strands, letters)


def random_framed(rng: random.Random, strands: int, length: int, d: int) -> FramedBraidWord:
    framings = tuple(rng.randrange(-d, d + 1) for _ in range(strands))
    return FramedBraidWord(framings, random_classical(rng, strands, length))


def random_singular(rng: random.Random, strands: int, length: int, singular: int) -> SingularBraidWord:
    letters = [("s", i, e) for i, e in random_classical(rng, strands, length).letters]
    for _ in range(singular):
        letters.insert(rng.randint(0, len(letters)), (SINGULAR, rng.randint(1, strands - 1), 1))
    return SingularBraidWord(strands, tuple(letters))


def _strands(rng: random.Random, low: int = 2, high: int = 3) -> int:
    return rng.randint(low, high)


# ------------------------------------------------------------------- suites


def esystem_suite(ctx: SuiteContext) -> int:
    """Every solution for d' <= d verifies, has E = 1/|D|, and they are distinct."""
    checks = 0
    for d in range(1, ctx.d + 1):
        solutions = list_solutions(d)
        if len(solutions) != 2**d - 1:
            _fail(f"expected {2 ** d - 1} solutions for d={d}, found {len(solutions)}")
        if len({sol.values for sol in solutions}) != len(solutions):
            _fail(f"solutions for d={d} are not pairwise distinct")
        for sol in solutions:
            result = verify(d, sol.values)
            if not result.passed or sol.e_d != Fraction(1, sol.d_size):
                _fail(f"solution d={d} D={sol.D} fails verification", failing_m=result.failing_m)
            checks += 1
    return checks


def basis_suite(ctx: SuiteContext) -> int:
    """Basis sizes are n!·d^n."""
    checks = 0
    for d in range(1, ctx.d + 1):
        for n in range(1, 5):
            size = len(enumerate_basis(d, n, ctx.basis_guard))
            if size != factorial(n) * d**n:
                _fail(f"basis of Y_({d},{n}) has {size} elements")
            checks += 1
    return checks


def power_suite(ctx: SuiteContext) -> int:
    """Closed power formula against repeated multiplication."""
    checks = 0
    for n in (2, 3):
        for i in range(1, n):
            step, back = gen_g(ctx.d, n, i, 1), generator_inverse(ctx.d, n, i)
            up, down = step, back
            for r in range(1, 9):
                if gen_g(ctx.d, n, i, r) != up or gen_g(ctx.d, n, i, -r) != down:
                    _fail(f"power formula differs from repeated products for g_{i}^(±{r}) in Y_({ctx.d},{n})")
                up, down = multiply(up, step), multiply(down, back)
                checks += 2
    return checks


def strategies_suite(ctx: SuiteContext) -> int:
    """naive, power and memo traces agree on random framed words."""
    engines = {name: TraceEngine(name) for name in STRATEGIES}
    for _ in range(ctx.count):
        word = random_framed(ctx.rng, _strands(ctx.rng, 2, 4), ctx.rng.randint(0, 8), ctx.d)
        values = {name: engine.trace_generic(ctx.d, word).value for name, engine in engines.items()}
        if len(set(values.values())) != 1:
            _fail(f"trace strategies disagree on {word.serialize()}")
    return ctx.count


def inversion_suite(ctx: SuiteContext) -> int:
    """tr_d is invariant under reading a word backwards."""
    for _ in range(ctx.count):
        word = random_framed(ctx.rng, _strands(ctx.rng), ctx.rng.randint(0, 6), ctx.d)
        if ctx.engine.trace_generic(ctx.d, word).value != ctx.engine.trace_generic(ctx.d, reverse(word)).value:
            _fail(f"trace of {word.serialize()} changes under inversion")
    return ctx.count


def mirror_suite(ctx: SuiteContext) -> int:
    """Θ of the mirror image equals the mirror law applied to Θ."""
    checks = 0
    for _ in range(ctx.count):
        word = random_classical(ctx.rng, _strands(ctx.rng), ctx.rng.randint(1, 5))
        for subset in ctx.subsets:
            expected = mirror_transform(theta(ctx.d, subset, word, ctx.engine)).value
            if theta(ctx.d, subset, mirror(word), ctx.engine).value != expected:
                _fail(f"mirror law fails on {word.serialize()} for D={subset}")
            checks += 1
    return checks


def split_suite(ctx: SuiteContext) -> int:
    """Φ of a split link is Λ^{m-1} times the product over its parts."""
    checks = 0
    for _ in range(ctx.count):
        parts = [random_framed(ctx.rng, 2, ctx.rng.randint(0, 3), ctx.d) for _ in range(2)]
        for subset in ctx.subsets:
            if not split_product_check(ctx.d, subset, parts, ctx.engine):
                _fail(f"split multiplicativity fails for {[p.serialize() for p in parts]} D={subset}")
            checks += 1
    return checks


def connected_sum_suite(ctx: SuiteContext) -> int:
    """Φ is multiplicative on classical connected sums; framed loops need a character solution."""
    checks = 0
    for _ in range(ctx.count):
        a = random_classical(ctx.rng, 2, ctx.rng.randint(1, 4))
        b = random_classical(ctx.rng, 2, ctx.rng.randint(1, 4))
        for subset in ctx.subsets:
            left = phi(ctx.d, subset, connected_sum(a, b), ctx.engine).value
            right = phi(ctx.d, subset, a, ctx.engine).value * phi(ctx.d, subset, b, ctx.engine).value
            if left != right:
                _fail(f"connected sum of {a.serialize()} and {b.serialize()} is not multiplicative for D={subset}")
            checks += 1
    for subset in ctx.subsets:
        sol = solve(ctx.d, subset)
        multiplicative = True
        for k in range(ctx.d):
            for m in range(ctx.d):
                loop_k = FramedBraidWord((k,), BraidWord(1))
                loop_m = FramedBraidWord((m,), BraidWord(1))
                whole = ctx.engine.trace_specialized(ctx.d, subset, connected_sum(loop_k, loop_m)).value
                product = ctx.engine.trace_specialized(ctx.d, subset, loop_k).value * ctx.engine.trace_specialized(ctx.d, subset, loop_m).value
                multiplicative = multiplicative and whole == product
        if multiplicative != is_character_solution(sol):
            _fail(f"framed connected sums for D={subset} contradict the character condition")
        checks += 1
    return checks


def markov_suite(ctx: SuiteContext) -> int:
    """Θ, Φ, Ψ survive conjugation and both stabilizations; M_d survives the positive one."""
    checks = 0
    subset = ctx.subsets[-1]
    for _ in range(ctx.count):
        n = _strands(ctx.rng)
        word = random_classical(ctx.rng, n, ctx.rng.randint(1, 5))
        by = random_classical(ctx.rng, n, 2)
        framed = random_framed(ctx.rng, n, ctx.rng.randint(1, 4), ctx.d)
        singular = random_singular(ctx.rng, n, ctx.rng.randint(0, 3), 1)
        for fn, sample in ((theta, word), (phi, framed), (psi, singular)):
            base = fn(ctx.d, subset, sample, ctx.engine).value
            for moved in (conjugate(sample, by), stabilize(sample, 1), stabilize(sample, -1)):
                if fn(ctx.d, subset, moved, ctx.engine).value != base:
                    _fail(f"{fn.__name__} changes from {sample.serialize()} to {moved.serialize()}")
                checks += 1
        base = transverse_m(ctx.d, word, ctx.engine).value
        if transverse_m(ctx.d, conjugate(word, by), ctx.engine).value != base:
            _fail(f"transverse invariant changes under conjugation of {word.serialize()}")
        if not stabilization_report(ctx.d, word, ctx.engine)["positive_equal"]:
            _fail(f"transverse invariant changes under positive stabilization of {word.serialize()}")
        checks += 2
    return checks


def skein_suite(ctx: SuiteContext) -> int:
    """Framed and singular skein residuals vanish."""
    checks = 0
    for _ in range(ctx.count):
        n = _strands(ctx.rng)
        framed = random_framed(ctx.rng, n, ctx.rng.randint(0, 4), ctx.d)
        singular = random_singular(ctx.rng, n, ctx.rng.randint(0, 3), ctx.rng.randint(0, 1))
        i = ctx.rng.randint(1, n - 1)
        for subset in ctx.subsets:
            if not skein_residual_framed(ctx.d, subset, framed, i, ctx.engine).is_zero:
                _fail(f"framed skein residual is not zero for {framed.serialize()} at i={i}, D={subset}")
            if not skein_residual_singular(ctx.d, subset, singular, i, ctx.engine).is_zero:
                _fail(f"singular skein residual is not zero for {singular.serialize()} at i={i}, D={subset}")
            checks += 2
    return checks


def closed_formula_suite(ctx: SuiteContext) -> int:
    """tr_{d,D}(σ_1^{2k}) against its closed form and the Ocneanu relation."""
    checks = 0
    for subset in ctx.subsets:
        e_d = solve(ctx.d, subset).e_d
        for k in range(1, 6):
            left, right = ocneanu_relation(k, ctx.d, subset, ctx.engine)
            closed = 1 - MultiLaurent.constant(e_d) + qsum(2 * k) * Z + qsum(2 * k - 1) * e_d
            if left != closed or left != right:
                _fail(f"closed trace formula fails for k={k}, D={subset}")
            checks += 1
    return checks


# Knots on which Θ must equal the rescaled Homflypt polynomial.
HOMFLYPT_KNOTS = ("n=2; s1^3", "n=2; s1^5", "n=3; s1 s2^-1 s1 s2^-1")


def homflypt_suite(ctx: SuiteContext) -> int:
    """Θ_{d,D} = P(q, z/E_D) on knots; σ_1^{2k} shows links may differ."""
    knots = [parse_word(text) for text in HOMFLYPT_KNOTS]
    knots += [instantiate("power-mixed-clasp", p=p).word for p in (3, 5)]
    knots.append(parse_word(NG_PRESENTATIONS[0][1]))
    checks = 0
    for word in knots:
        for subset in ctx.subsets:
            compare_theta_homflypt(word, ctx.d, subset, ctx.engine)
            checks += 1
    if ctx.d >= 2:
        full = tuple(range(ctx.d))
        for k in (1, 2):
            outcome = compare_theta_homflypt(BraidWord(2, ((1, 2 * k),)), ctx.d, full, ctx.engine)
            if outcome.status != "link_differ":
                _fail(f"Θ on s1^{2 * k} was expected to differ from the rescaled Homflypt polynomial")
            checks += 1
    return checks


def vassiliev_suite(ctx: SuiteContext) -> int:
    """Words with k double points give h-series vanishing below order k."""
    checks = 0
    subset = ctx.subsets[0]
    for singular in (1, 2):
        for _ in range(ctx.count):
            word = random_singular(ctx.rng, _strands(ctx.rng), ctx.rng.randint(0, 3), singular)
            series = vassiliev_coefficients(ctx.d, subset, word, ctx.series_order, ctx.engine)
            if series.valuation() < singular:
                _fail(f"h-series of {word.serialize()} has a nonzero coefficient below order {singular}")
            checks += 1
    return checks


# Pairs of transverse representatives the transverse invariant cannot tell apart.
TRANSVERSE_PAIRS = (
    ("birman-menasco", {"a": 2, "b": 2, "c": 3}),
    ("khandhawit-ng", {"a": 0, "b": 0}),
)


def transverse_suite(ctx: SuiteContext) -> int:
    """The transverse invariant does not separate the Birman–Menasco or Khandhawit–Ng pairs."""
    checks = 0
    for family, params in TRANSVERSE_PAIRS:
        first = instantiate(family, **params).word
        second = instantiate(f"{family}-partner", **params).word
        if transverse_m(ctx.d, first, ctx.engine).value != transverse_m(ctx.d, second, ctx.engine).value:
            label = ",".join(str(v) for v in params.values())
            _fail(f"transverse invariant separates the {family} pair ({label})")
        checks += 1
    return checks


SUITES: Dict[str, Callable[[SuiteContext], int]] = {
    "esystem": esystem_suite,
    "basis": basis_suite,
    "power": power_suite,
    "strategies": strategies_suite,
    "inversion": inversion_suite,
    "mirror": mirror_suite,
    "split": split_suite,
    "connected-sum": connected_sum_suite,
    "markov": markov_suite,
    "skein": skein_suite,
    "closed-formula": closed_formula_suite,
    "homflypt": homflypt_suite,
    "vassiliev": vassiliev_suite,
    "transverse": transverse_suite,
}


def run_suites(names: Sequence[str], ctx: SuiteContext) -> Dict[str, int]:
    """Run suites in order; ``all`` expands to every suite."""
    if "all" in names:
        names = list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise InvalidParameterError(f"unknown suite {unknown[0]!r}; expected one of all, {', '.join(SUITES)}")
    results = {}
    for name in names:
        results[name] = SUITES[name](ctx)
        logger.info("suite passed", suite=name, d=ctx.d, checks=results[name])
    return results
