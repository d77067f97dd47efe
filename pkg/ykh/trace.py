"""Markov traces on the Yokonuma–Hecke algebras.

The engine evaluates tr_d (x variables kept) and tr_{d,D} (x variables set
to an E-system solution) on words and algebra elements. A word is first
embedded into Y_{d,n}(q) in normal form; each basis monomial t^k g_w is then
peeled one strand at a time:

* no braiding and no framing left: the value is 1;
* the highest framed strand J lies above every braided strand: t_J^k splits
  off as x_k;
* otherwise g_w = g_u g_{M-1} g_{M-2} .. g_i with M the highest braided
  strand, the single g_{M-1} contributes z and the remainder, including any
  t_M^k carried through g_{M-1} as t_{M-1}^k, is reduced in Y_{d,M-1}.
"""

import threading
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple, Union

import structlog

from .algebra import RewriteStats, YElement, YMonomial, embed, inductive_word, right_multiply_framing, right_multiply_generator
from .braid import BraidWord, FramedBraidWord, SingularBraidWord
from .esystem import ESolution, solve
from .exactcoeff.laurent import MultiLaurent, Z, x_variable
from .utils.config import STRATEGIES
from .utils.exceptions import InvalidParameterError
from .utils.monitoring import QUADRATIC_REWRITES, TRACE_CACHE_HITS, TRACE_PEELS, track_trace_computation

logger = structlog.get_logger(__name__)

ONE = MultiLaurent.constant(1)
PEEL_CASES = ("unit", "framing", "braid", "framed_braid")
_STRATEGY_ALIASES = {"power_formula": "power", "memoized": "memo"}

Traceable = Union[BraidWord, FramedBraidWord, SingularBraidWord, YElement]


@dataclass(frozen=True)
class TraceResult:
    value: MultiLaurent
    d: int
    D: Optional[Tuple[int, ...]] = None

    def serialize(self) -> str:
        return self.value.serialize()


@dataclass
class TraceStatistics:
    """Per-call counters reported by :meth:`TraceEngine.trace_with_strategy`."""

    strategy: str
    quadratic_rewrites: int = 0
    multiplications: int = 0
    peels: Dict[str, int] = field(default_factory=lambda: {case: 0 for case in PEEL_CASES})
    cache_hits: int = 0
    cache_misses: int = 0
    wall_time: float = 0.0

    @property
    def rule_applications(self) -> int:
        return self.quadratic_rewrites + sum(self.peels.values())

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "quadratic_rewrites": self.quadratic_rewrites,
            "multiplications": self.multiplications,
            "peels": dict(self.peels),
            "cache_hits": self.cache_hits,
            "cache_misses": self.cache_misses,
            "wall_time": self.wall_time,
        }


@dataclass(frozen=True)
class _Context:
    d: int
    solution: Optional[ESolution]

    @property
    def key(self) -> tuple:
        return (self.d, self.solution.D if self.solution else None)

    def x(self, k: int) -> MultiLaurent:
        k %= self.d
        if k == 0:
            return ONE
        if self.solution is None:
            return x_variable(k)
        return MultiLaurent.constant(self.solution.x(k))


class TraceEngine:
    """Evaluates traces with a per-engine memo cache.

    The memo maps (d, D, trimmed monomial) to its trace. Lookups and stores
    are guarded by a lock, so one engine may serve several threads; values do
    not depend on which thread computed them.
    """

    def __init__(self, strategy: str = "memo"):
        self.strategy = self._resolve(strategy)
        self._memo: Dict[tuple, MultiLaurent] = {}
        self._lock = threading.Lock()

    @staticmethod
    def _resolve(strategy: str) -> str:
        strategy = _STRATEGY_ALIASES.get(strategy, strategy)
        if strategy not in STRATEGIES:
            raise InvalidParameterError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")
        return strategy

    @property
    def cache_size(self) -> int:
        with self._lock:
            return len(self._memo)

    def clear_cache(self) -> None:
        with self._lock:
            self._memo.clear()

    # ---------------------------------------------------------------- public

    def trace_generic(self, d: int, word: Traceable) -> TraceResult:
        """tr_d with the framing parameters kept as variables x_1..x_{d-1}."""
        result, _ = self.trace_with_strategy(d, word)
        return result

    def trace_specialized(self, d: int, subset: Iterable[int], word: Traceable) -> TraceResult:
        """tr_{d,D}: the x variables replaced by the E-system solution for D."""
        result, _ = self.trace_with_strategy(d, word, subset=subset)
        return result

    def trace_with_strategy(
        self,
        d: int,
        word: Traceable,
        strategy: Optional[str] = None,
        subset: Optional[Iterable[int]] = None,
    ) -> Tuple[TraceResult, TraceStatistics]:
        """Trace a word or element and report what the computation did.

        Strategies: ``naive`` multiplies letters one at a time, ``power``
        collapses runs of a generator through the power formula, ``memo`` adds
        the monomial cache on top of ``power``. All three return identical values.
        """
        strategy = self._resolve(strategy or self.strategy)
        if d < 1:
            raise InvalidParameterError(f"d must be positive, got {d}")
        solution = solve(d, subset) if subset is not None else None
        context = _Context(d, solution)
        stats = TraceStatistics(strategy)
        rewrites = RewriteStats()
        start = time.perf_counter()
        with track_trace_computation(strategy):
            element = self._to_element(d, word, strategy != "naive", rewrites)
            value = self._trace_element(context, element, stats, rewrites, strategy == "memo")
        stats.wall_time = time.perf_counter() - start
        stats.quadratic_rewrites = rewrites.quadratic
        stats.multiplications = rewrites.multiplications
        self._publish(stats)
        logger.debug("trace computed", d=d, D=list(solution.D) if solution else None, **stats.to_dict())
        return TraceResult(value, d, solution.D if solution else None), stats

    def trace_element(self, element: YElement, subset: Optional[Iterable[int]] = None) -> MultiLaurent:
        """Linear extension of the trace to an arbitrary algebra element."""
        solution = solve(element.d, subset) if subset is not None else None
        stats = TraceStatistics(self.strategy)
        return self._trace_element(_Context(element.d, solution), element, stats, RewriteStats(), self.strategy == "memo")

    # -------------------------------------------------------------- internals

    @staticmethod
    def _to_element(d: int, word: Traceable, power_formula: bool, rewrites: RewriteStats) -> YElement:
        if isinstance(word, YElement):
            if word.d != d:
                raise InvalidParameterError(f"element lives in Y_({word.d},{word.n}), not d={d}")
            return word
        if isinstance(word, FramedBraidWord):
            return embed(word, "gamma", d, power_formula, rewrites)
        if isinstance(word, SingularBraidWord):
            return embed(word, "eta", d, power_formula, rewrites)
        if isinstance(word, BraidWord):
            return embed(word, "delta", d, power_formula, rewrites)
        raise InvalidParameterError(f"cannot trace a {type(word).__name__}")

    def _trace_element(self, context: _Context, element: YElement, stats: TraceStatistics, rewrites: RewriteStats, use_memo: bool) -> MultiLaurent:
        total = MultiLaurent()
        for (framings, perm), coeff in element.terms.items():
            total = total + coeff * self._trace_monomial(context, framings, perm, stats, rewrites, use_memo)
        return total

    def _trace_monomial(self, context, framings, perm, stats, rewrites, use_memo) -> MultiLaurent:
        d = context.d
        n = len(perm)
        while n and perm[n - 1] == n - 1 and framings[n - 1] % d == 0:
            n -= 1
        framings, perm = tuple(k % d for k in framings[:n]), perm[:n]
        if n == 0:
            stats.peels["unit"] += 1
            return ONE

        key = (context.key, framings, perm)
        if use_memo:
            with self._lock:
                cached = self._memo.get(key)
            if cached is not None:
                stats.cache_hits += 1
                return cached
            stats.cache_misses += 1

        top_braided = max((j + 1 for j in range(n) if perm[j] != j), default=0)
        top_framed = max((j + 1 for j in range(n) if framings[j]), default=0)

        if top_framed > top_braided:
            stats.peels["framing"] += 1
            rest = self._trace_monomial(context, framings[: n - 1], perm[: n - 1], stats, rewrites, use_memo)
            value = context.x(framings[n - 1]) * rest
        else:
            m = top_braided - 1
            i0 = perm.index(m)
            assert inductive_word(perm).count(m) == 1, "largest generator must occur once in the normal form"
            u = perm[:i0] + perm[i0 + 1 : m + 1]
            reduced = YElement(d, m, {YMonomial(framings[:m], u): ONE})
            if framings[m]:
                stats.peels["framed_braid"] += 1
                reduced = right_multiply_framing(reduced, m - 1, framings[m])
            else:
                stats.peels["braid"] += 1
            for idx in range(m - 2, i0 - 1, -1):
                reduced = right_multiply_generator(reduced, idx, rewrites)
            value = Z * self._trace_element(context, reduced, stats, rewrites, use_memo)

        if use_memo:
            with self._lock:
                self._memo.setdefault(key, value)
        return value

    @staticmethod
    def _publish(stats: TraceStatistics) -> None:
        if stats.quadratic_rewrites:
            QUADRATIC_REWRITES.inc(stats.quadratic_rewrites)
        if stats.cache_hits:
            TRACE_CACHE_HITS.inc(stats.cache_hits)
        for case, count in stats.peels.items():
            if count:
                TRACE_PEELS.labels(case=case).inc(count)
