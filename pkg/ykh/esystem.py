"""Solutions of the E-system that parametrize the specialized traces.

For a nonempty subset D of Z/d the solution is

    x_k = (1/|D|) Σ_{m ∈ D} ζ_d^{mk}

and every constructed solution is checked against the system
E^{(m)} = x_m E before it is handed out.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

import structlog

from .exactcoeff.cyclotomic import Cyclotomic, zeta_power
from .utils.exceptions import ESystemVerificationError, InvalidParameterError

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class ESolution:
    d: int
    D: Tuple[int, ...]
    values: Tuple[Cyclotomic, ...]
    e_d: Fraction

    def x(self, k: int) -> Cyclotomic:
        """x_k with indices mod d and x_0 = 1."""
        k %= self.d
        if k == 0:
            return Cyclotomic.from_rational(self.d, 1)
        return self.values[k - 1]

    @property
    def d_size(self) -> int:
        return len(self.D)

    def serialize(self) -> str:
        xs = ", ".join(f"x{k}={v.serialize()}" for k, v in enumerate(self.values, start=1))
        subset = ",".join(str(m) for m in self.D)
        return f"d={self.d} D={{{subset}}} E={self.e_d}" + (f" {xs}" if xs else "")


@dataclass(frozen=True)
class VerificationResult:
    passed: bool
    failing_m: Optional[int] = None
    e_value: Optional[Cyclotomic] = None


def normalize_subset(d: int, subset: Iterable[int]) -> Tuple[int, ...]:
    """Validate a subset of residues and return it sorted."""
    if d < 1:
        raise InvalidParameterError(f"d must be positive, got {d}")
    members = tuple(sorted(set(subset)))
    if not members:
        raise InvalidParameterError("D must be a nonempty subset of Z/d")
    for m in members:
        if not 0 <= m < d:
            raise InvalidParameterError(f"residue {m} is outside 0..{d - 1}")
    return members


def _e_sum(d: int, values: Sequence[Cyclotomic], shift: int) -> Cyclotomic:
    def x(k: int) -> Cyclotomic:
        k %= d
        return Cyclotomic.from_rational(d, 1) if k == 0 else values[k - 1]

    total = Cyclotomic(d)
    for s in range(d):
        total = total + x(shift + s) * x(d - s)
    return total / d


def verify(d: int, values: Sequence[Cyclotomic]) -> VerificationResult:
    """Check E^{(m)} = x_m E for m = 1..d-1 and E != 0.

    A zero E is reported with failing_m = 0.
    """
    values = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(d, v) for v in values)
    if len(values) != d - 1:
        raise InvalidParameterError(f"expected {d - 1} values for d={d}, got {len(values)}")
    e_value = _e_sum(d, values, 0)
    if not e_value:
        return VerificationResult(False, 0, e_value)
    for m in range(1, d):
        if _e_sum(d, values, m) != values[m - 1] * e_value:
            return VerificationResult(False, m, e_value)
    return VerificationResult(True, None, e_value)


@lru_cache(maxsize=None)
def _solve(d: int, members: Tuple[int, ...]) -> ESolution:
    weight = Fraction(1, len(members))
    values = []
    for k in range(1, d):
        total = Cyclotomic(d)
        for m in members:
            total = total + zeta_power(d, m * k)
        values.append(total * weight)
    result = verify(d, values)
    if not result.passed:
        logger.error("esystem verification failed", d=d, D=list(members), failing_m=result.failing_m)
        raise ESystemVerificationError(f"solution for d={d}, D={set(members)} fails at m={result.failing_m}", result.failing_m)
    if result.e_value != weight:
        raise ESystemVerificationError(f"E={result.e_value} differs from 1/|D| for d={d}, D={set(members)}", 0)
    return ESolution(d, members, tuple(values), weight)


def solve(d: int, subset: Iterable[int]) -> ESolution:
    """Construct and verify the solution indexed by the subset D."""
    return _solve(d, normalize_subset(d, subset))


def is_character_solution(solution: ESolution) -> bool:
    """True when x_1^d = 1 and x_k = x_1^k, which holds exactly for singletons."""
    x1 = solution.x(1)
    if x1**solution.d != 1:
        return False
    return all(solution.x(k) == x1**k for k in range(1, solution.d))


def list_solutions(d: int) -> List[ESolution]:
    """All 2^d - 1 solutions, ordered by subset size and then lexicographically."""
    residues = range(d)
    return [solve(d, subset) for size in range(1, d + 1) for subset in combinations(residues, size)]
