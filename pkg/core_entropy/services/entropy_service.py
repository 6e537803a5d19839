"""
Core entropy: exact spectral values, census growth estimates and bounds
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Union

import structlog

from core_entropy.core.config import settings
from core_entropy.core.exceptions import InvalidSequenceError, TrivialSequenceError
from core_entropy.models.angle import Angle
from core_entropy.models.kneading import BoundedStream, KneadingSequence, SymbolSource
from core_entropy.models.symbols import Depth, INFINITY, format_depth, is_infinite
from core_entropy.services.angle_service import kneading_of_angle
from core_entropy.services.automaton_service import compile_automaton
from core_entropy.services.cache_service import CachePrefixes, cache_service
from core_entropy.services.census_service import census
from core_entropy.services.spectral_service import spectral_radius
from core_entropy.services.symbolic_service import diff

logger = structlog.get_logger(__name__)

LOG2 = math.log(2)

# float slack allowed when checking lower <= value <= upper <= log 2
_ORDER_SLACK = 1e-15


class EntropyKind(str, Enum):
    EXACT_SPECTRAL = "exact-spectral"
    GROWTH_ESTIMATE = "growth-estimate"


@dataclass(frozen=True)
class EntropyResult:
    """Entropy value with a bracket; 0 <= lower <= value <= upper <= log 2"""
    value: float
    kind: EntropyKind
    lower_bound: float
    upper_bound: float
    evidence: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not (
            -_ORDER_SLACK <= self.lower_bound <= self.value + _ORDER_SLACK
            and self.value <= self.upper_bound + _ORDER_SLACK
            and self.upper_bound <= LOG2 + _ORDER_SLACK
        ):
            raise ValueError(
                f"inconsistent entropy bracket {self.lower_bound} <= {self.value} <= {self.upper_bound}"
            )

    @property
    def is_zero(self) -> bool:
        return self.upper_bound == 0.0


def _clamp_log(x: float) -> float:
    """log x clamped into [0, log 2]"""
    if x <= 1.0:
        return 0.0
    return min(math.log(x), LOG2)


def _entropy_exact_uncached(nu: KneadingSequence, tolerance: float) -> EntropyResult:
    automaton = compile_automaton(nu)
    bounds = spectral_radius(automaton.matrix(), tolerance=tolerance)
    value = _clamp_log(bounds.radius)
    lower = min(_clamp_log(bounds.lower), value)
    upper = max(_clamp_log(bounds.upper), value)
    evidence = {
        "states": automaton.size,
        "splitting_states": automaton.split_count,
        "spectral_radius": bounds.radius,
        "radius_lower": bounds.lower,
        "radius_upper": bounds.upper,
        "components": bounds.components,
        "nontrivial_components": bounds.nontrivial_components,
        "iterations": bounds.iterations,
        "method": bounds.method,
        "converged": bounds.converged,
    }
    return EntropyResult(value, EntropyKind.EXACT_SPECTRAL, lower, upper, evidence)


def entropy_exact(nu: KneadingSequence, tolerance: Optional[float] = None) -> EntropyResult:
    """
    Core entropy of an eventually periodic kneading sequence

    Args:
        nu: non-trivial kneading sequence
        tolerance: width of the spectral radius bracket, SPECTRAL_TOLERANCE by default

    Returns:
        log of the spectral radius of the split automaton, clamped to [0, log 2]
    """
    if not isinstance(nu, KneadingSequence):
        raise InvalidSequenceError(f"{nu}: exact entropy needs a kneading sequence", invariant="eventually periodic")
    if nu.is_trivial:
        raise TrivialSequenceError("entropy_exact")
    tolerance = tolerance or settings.SPECTRAL_TOLERANCE
    result = cache_service.get_or_set(
        CachePrefixes.ENTROPY, lambda: _entropy_exact_uncached(nu, tolerance), nu.text, tolerance
    )
    logger.debug("entropy exact", sequence=nu.text, value=result.value)
    return result


def entropy_of_angle(theta: Angle) -> EntropyResult:
    return entropy_exact(kneading_of_angle(theta))


def second_one_position(nu: SymbolSource) -> Optional[int]:
    """Position s >= 2 of the second concrete 1, or None if nu_2 nu_3 ... has no 1"""
    if isinstance(nu, BoundedStream):
        limit = nu.horizon
    else:
        limit = nu.window + 1
    for k in range(2, limit + 1):
        if nu.char(k) == "1":
            return k
    return None


def refined_upper_bound(nu: SymbolSource) -> float:
    """min(log 2, log(2^s - 1)/s) for the second-one position s"""
    s = second_one_position(nu)
    if s is None:
        return LOG2
    return min(LOG2, math.log((1 << s) - 1) / s)


def periodic_lower_bound(nu: KneadingSequence) -> float:
    """
    log 2/(p - 1) for a *-periodic sequence of period p >= 2

    Any such sequence with positive entropy has at least this much.
    """
    if not nu.is_star_periodic or nu.is_trivial:
        raise InvalidSequenceError(f"{nu} is not a non-trivial *-periodic sequence", invariant="star-periodic")
    p = nu.period_length
    if p < 2:
        raise ValueError(f"{nu} has period {p}; the bound needs p >= 2")
    return LOG2 / (p - 1)


def entropy_estimate(source: Union[KneadingSequence, BoundedStream], n_max: Optional[int] = None) -> EntropyResult:
    """
    Entropy estimate from census growth over the last third of the horizon

    Args:
        source: kneading sequence or bounded stream read up to n_max
        n_max: census depth, at least 16

    Returns:
        GROWTH_ESTIMATE result; lower is the best single-depth rate, value is
        the growth of the cumulative count, upper the second-one bound
    """
    n_max = n_max or settings.CENSUS_HORIZON
    if n_max < 16:
        raise ValueError(f"entropy_estimate needs n_max >= 16, got {n_max}")
    counts = census(source, n_max).counts

    start = n_max - n_max // 3
    raw = 0.0
    for n in range(start, n_max + 1):
        if counts[n] > 1:
            raw = max(raw, math.log(counts[n]) / n)

    cumulative_start = sum(counts[1: start + 1])
    cumulative_end = sum(counts[1: n_max + 1])
    if cumulative_start > 0 and cumulative_end > 0:
        growth = (math.log(cumulative_end) - math.log(cumulative_start)) / (n_max - start)
    else:
        growth = raw

    upper = refined_upper_bound(source)
    value = min(max(growth, raw), upper)
    lower = min(raw, value)
    evidence = {
        "n_max": n_max,
        "window_start": start,
        "cumulative_start": cumulative_start,
        "cumulative_end": cumulative_end,
        "count_at_n_max": counts[n_max],
    }
    logger.debug("entropy estimate", sequence=str(source), value=value, n_max=n_max)
    return EntropyResult(value, EntropyKind.GROWTH_ESTIMATE, lower, upper, evidence)


@dataclass(frozen=True)
class RecurrenceWitness:
    """
    sup over n of diff(nu, shift^n nu): window_max over 1..n_max, sup over all n
    """
    window_max: Depth
    sup: Depth
    bounded: bool
    recurrent: bool
    reason: str

    def as_dict(self) -> Dict[str, Any]:
        return {
            "window_max": format_depth(self.window_max),
            "sup": format_depth(self.sup),
            "bounded": self.bounded,
            "recurrent": self.recurrent,
            "reason": self.reason,
        }


def recurrence_witness(nu: KneadingSequence, n_max: Optional[int] = None) -> RecurrenceWitness:
    """
    Non-recurrence evidence for an eventually periodic kneading sequence

    Eventually periodic sequences are never recurrent: periodic ones (and
    *-periodic ones, where * matches everything) return to themselves, so
    they are classed non-recurrent by convention.
    """
    if nu.is_trivial:
        raise TrivialSequenceError("recurrence_witness")
    n_max = n_max or settings.CENSUS_HORIZON

    def depth_at(n: int) -> Depth:
        return diff(nu, nu.shift(n))

    window_max = max(depth_at(n) for n in range(1, n_max + 1))
    # shifts past the preperiod repeat with the period
    sup = max(depth_at(n) for n in range(1, nu.window + 1))

    if nu.is_star_periodic:
        reason = "star-periodic convention"
    elif nu.is_periodic:
        reason = "periodic"
    else:
        reason = "preperiodic"
    bounded = not is_infinite(sup)
    if not bounded:
        sup = INFINITY
    return RecurrenceWitness(window_max=window_max, sup=sup, bounded=bounded, recurrent=False, reason=reason)
