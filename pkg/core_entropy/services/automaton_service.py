"""
Finite split automaton for eventually periodic kneading sequences
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog
from scipy import sparse

from core_entropy.core.exceptions import InvalidSequenceError, TrivialSequenceError
from core_entropy.models.kneading import EventuallyPeriodicWord, KneadingSequence
from core_entropy.services.census_service import IntervalState, transition

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class SplitAutomaton:
    """
    Interval states reachable from (CRITICAL, 0) over reduced offsets.

    successors[i] holds one index for a non-splitting state, two for a split
    (possibly equal) and none for a pair whose endpoints never separate.
    """
    sequence: KneadingSequence
    states: Tuple[IntervalState, ...]
    successors: Tuple[Tuple[int, ...], ...]
    splits: Tuple[bool, ...]
    initial: int = 0

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def split_count(self) -> int:
        return sum(self.splits)

    def replay(self, n_max: int) -> Tuple[int, ...]:
        """Exact counts N(1..n_max) by integer vector propagation; index 0 is unused"""
        counts = [0] * (n_max + 1)
        weights: Dict[int, int] = {self.initial: 1}
        for n in range(1, n_max + 1):
            nxt: Dict[int, int] = {}
            for i, w in weights.items():
                if self.splits[i]:
                    counts[n] += w
                for j in self.successors[i]:
                    nxt[j] = nxt.get(j, 0) + w
            weights = nxt
        return tuple(counts)

    def matrix(self) -> sparse.csr_matrix:
        """Counting matrix M with M[j, i] = number of edges i -> j"""
        rows: List[int] = []
        cols: List[int] = []
        for i, targets in enumerate(self.successors):
            for j in targets:
                rows.append(j)
                cols.append(i)
        data = np.ones(len(rows), dtype=np.float64)
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.size, self.size))


def _explore(nu: KneadingSequence) -> Tuple[List[IntervalState], List[Tuple[int, ...]], List[bool]]:
    index: Dict[IntervalState, int] = {IntervalState.initial(): 0}
    states = [IntervalState.initial()]
    successors: List[Tuple[int, ...]] = []
    splits: List[bool] = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        split, children = transition(nu, states[i])
        targets = []
        for child in children:
            if child not in index:
                index[child] = len(states)
                states.append(child)
                queue.append(index[child])
            targets.append(index[child])
        # BFS pops indices in order, so position i is filled now
        successors.append(tuple(targets))
        splits.append(split)
    return states, successors, splits


def _eventually_splits(successors: List[Tuple[int, ...]], splits: List[bool]) -> List[bool]:
    """A non-splitting state has one successor; follow that chain to a split or a cycle"""
    result: List[Optional[bool]] = [None] * len(splits)
    for start in range(len(splits)):
        path: List[int] = []
        on_path = set()
        current = start
        while result[current] is None and current not in on_path:
            if splits[current]:
                result[current] = True
                break
            on_path.add(current)
            path.append(current)
            current = successors[current][0]
        outcome = bool(result[current]) if result[current] is not None else False
        for state in path:
            result[state] = outcome
    return [bool(r) for r in result]


def compile_automaton(nu: EventuallyPeriodicWord) -> SplitAutomaton:
    """
    Build the split automaton of an eventually periodic kneading sequence

    Pairs whose endpoint itineraries never differ bound a Fatou interval; they
    are kept as absorbing states without successors.
    """
    if not isinstance(nu, EventuallyPeriodicWord):
        raise InvalidSequenceError(
            f"{nu}: the automaton needs an eventually periodic sequence", invariant="eventually periodic"
        )
    nu = nu if isinstance(nu, KneadingSequence) else KneadingSequence.from_word(nu)
    if nu.is_trivial:
        raise TrivialSequenceError("compile_automaton")

    states, successors, splits = _explore(nu)
    alive = _eventually_splits(successors, splits)
    pruned = [targets if alive[i] else () for i, targets in enumerate(successors)]

    # keep only what stays reachable from the initial state after pruning
    order = [0]
    remap = {0: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in pruned[i]:
            if j not in remap:
                remap[j] = len(order)
                order.append(j)
                queue.append(j)

    automaton = SplitAutomaton(
        sequence=nu,
        states=tuple(states[i] for i in order),
        successors=tuple(tuple(remap[j] for j in pruned[i]) for i in order),
        splits=tuple(splits[i] for i in order),
    )
    logger.debug(
        "automaton compiled",
        sequence=nu.text,
        explored=len(states),
        states=automaton.size,
        absorbing=sum(1 for t in automaton.successors if not t),
    )
    return automaton
