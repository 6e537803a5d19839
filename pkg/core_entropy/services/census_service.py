"""
Precritical point census on the critical path via interval splitting
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

import structlog

from core_entropy.core.exceptions import HorizonError, PostconditionError, TrivialSequenceError
from core_entropy.models.kneading import BoundedStream, KneadingSequence, SymbolSource

logger = structlog.get_logger(__name__)

CRITICAL = -1

# explicit itinerary recording doubles per depth
MAX_WORD_DEPTH = 24


@dataclass(frozen=True, order=True)
class IntervalState:
    """
    Interval between two iterates of nu (or *nu), stored by endpoint offsets.

    Offset j stands for shift^j(nu); CRITICAL stands for *nu. The pair is kept
    sorted since [x, y] and [y, x] evolve identically.
    """
    left: int
    right: int

    def __post_init__(self):
        if self.left > self.right:
            left, right = self.right, self.left
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)

    @classmethod
    def initial(cls) -> "IntervalState":
        return cls(CRITICAL, 0)


def endpoint_symbol(source: SymbolSource, offset: int) -> str:
    if offset == CRITICAL:
        return "*"
    return source.char(offset + 1)


def advance(source: SymbolSource, offset: int) -> int:
    if offset == CRITICAL:
        return 0
    return source.reduce_offset(offset + 1)


def transition(source: SymbolSource, state: IntervalState) -> Tuple[bool, Tuple[IntervalState, ...]]:
    """
    One step of the subdivision

    Returns:
        (split, successors): a split yields two children, each keeping one
        advanced endpoint and taking the critical value (offset 0) as the other
    """
    a = endpoint_symbol(source, state.left)
    b = endpoint_symbol(source, state.right)
    left, right = advance(source, state.left), advance(source, state.right)
    if a == "*" or b == "*" or a == b:
        return False, (IntervalState(left, right),)
    return True, (IntervalState(left, 0), IntervalState(0, right))


@dataclass(frozen=True)
class PrecriticalCensus:
    """counts[n] = N(n) for 1 <= n <= n_max; counts[0] is unused"""
    counts: Tuple[int, ...]
    n_max: int
    frontier_size: int

    def count(self, depth: int) -> int:
        return self.counts[depth]

    def cumulative(self, depth: int) -> int:
        return sum(self.counts[1: depth + 1])

    def rows(self) -> List[Tuple[int, int]]:
        return [(n, self.counts[n]) for n in range(1, self.n_max + 1)]


def _check_source(source: SymbolSource, n_max: int, operation: str) -> None:
    if isinstance(source, KneadingSequence) and source.is_trivial:
        raise TrivialSequenceError(operation)
    if n_max < 2:
        raise ValueError(f"{operation} needs n_max >= 2, got {n_max}")
    if isinstance(source, BoundedStream) and source.horizon < n_max:
        raise HorizonError(f"stream horizon {source.horizon} is shorter than n_max={n_max}")


def census(source: Union[KneadingSequence, BoundedStream], n_max: int) -> PrecriticalCensus:
    """
    Count precritical points by depth on [*nu, nu]

    The frontier is a state -> multiplicity map, so eventually periodic
    sequences cost polynomially in n_max.
    """
    _check_source(source, n_max, "census")

    frontier: Counter = Counter({IntervalState.initial(): 1})
    counts = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        nxt: Counter = Counter()
        for state, multiplicity in frontier.items():
            split, successors = transition(source, state)
            if split:
                counts[n] += multiplicity
            for child in successors:
                nxt[child] += multiplicity
        frontier = nxt

    for n in range(2, n_max + 1):
        if counts[n] > 2 ** (n - 2):
            raise PostconditionError(
                "census exceeds 2^(n-2)", details={"sequence": str(source), "depth": n, "count": counts[n]}
            )
    logger.debug("census", sequence=str(source), n_max=n_max, frontier=len(frontier))
    return PrecriticalCensus(counts=tuple(counts), n_max=n_max, frontier_size=len(frontier))


def precritical_words(source: Union[KneadingSequence, BoundedStream], n_max: int) -> Dict[int, List[str]]:
    """
    Itinerary words w of the precritical points w*nu, by depth

    Every interval carries the common itinerary prefix of its interior points;
    a split at depth n records that prefix (length n - 1).
    """
    _check_source(source, n_max, "precritical_words")
    if n_max > MAX_WORD_DEPTH:
        raise ValueError(f"explicit itineraries are limited to depth {MAX_WORD_DEPTH}")

    intervals: List[Tuple[IntervalState, str]] = [(IntervalState.initial(), "")]
    words: Dict[int, List[str]] = {n: [] for n in range(1, n_max + 1)}
    for n in range(1, n_max + 1):
        nxt: List[Tuple[IntervalState, str]] = []
        for state, prefix in intervals:
            a = endpoint_symbol(source, state.left)
            b = endpoint_symbol(source, state.right)
            split, successors = transition(source, state)
            if split:
                words[n].append(prefix)
                nxt.append((successors[0], prefix + a))
                nxt.append((successors[1], prefix + b))
            else:
                nxt.append((successors[0], prefix + (b if a == "*" else a)))
        intervals = nxt
    return words
