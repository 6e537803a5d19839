"""
Word combinatorics on kneading sequences: diff, projections, rho-orbits, internal addresses
"""

import math
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import structlog

from core_entropy.core.config import settings
from core_entropy.core.exceptions import (
    AmbiguousProjectionError,
    HorizonError,
    InvalidSequenceError,
    PostconditionError,
    TrivialSequenceError,
)
from core_entropy.models.kneading import (
    InternalAddress,
    KneadingSequence,
    SymbolSource,
    primitive_root,
)
from core_entropy.models.symbols import INFINITY, BeyondHorizon, Depth, Symbol, is_infinite

logger = structlog.get_logger(__name__)


class Certificate(str, Enum):
    """Outcome of the internal-address order test"""
    YES = "yes"
    NO_EVIDENCE = "no-evidence"


def entry(nu: SymbolSource, k: int) -> Symbol:
    """k-th symbol, 1-based"""
    return nu.entry(k)


def _first_difference(a: str, b: str) -> Optional[int]:
    for i, (x, y) in enumerate(zip(a, b), start=1):
        if x != y and x != "*" and y != "*":
            return i
    return None


def diff(a: SymbolSource, b: SymbolSource, horizon: Optional[int] = None) -> Depth:
    """
    Position of the first concrete difference, with * as a wildcard

    Args:
        a, b: eventually periodic words or bounded streams
        horizon: limit for bounded streams; eventually periodic pairs are decided exactly

    Returns:
        The position, INFINITY when two eventually periodic words never differ,
        or BeyondHorizon when a stream runs out first
    """
    if horizon is not None and horizon < 1:
        raise HorizonError(f"horizon must be positive, got {horizon}")

    if a.is_eventually_periodic and b.is_eventually_periodic:
        window = max(a.preperiod_length, b.preperiod_length) + math.lcm(a.period_length, b.period_length)
        found = _first_difference(a.prefix(window), b.prefix(window))
        return INFINITY if found is None else found

    limits = [h for h in (a.horizon, b.horizon, horizon) if h is not None]
    limit = min(limits)
    found = _first_difference(
        "".join(a.char(k) for k in range(1, limit + 1)),
        "".join(b.char(k) for k in range(1, limit + 1)),
    )
    return BeyondHorizon(limit) if found is None else found


def project(nu: SymbolSource, e: Union[Symbol, str]) -> SymbolSource:
    """Replace every * by e; kneading sequences stay kneading sequences"""
    projected = nu.project(e)
    if isinstance(nu, KneadingSequence) and not nu.is_trivial:
        return KneadingSequence.from_word(projected)
    return projected


def diff_resolved(nu: SymbolSource, other: SymbolSource, horizon: Optional[int] = None) -> Depth:
    """Diff: the larger of the two diffs after resolving * to 0 and to 1"""
    return max(diff(nu.project(e), other.project(e), horizon) for e in "01")


def _realizing_symbol(nu: SymbolSource, other: SymbolSource, horizon: Optional[int]) -> Tuple[str, Depth]:
    best_e, best = "0", diff(nu.project("0"), other.project("0"), horizon)
    alt = diff(nu.project("1"), other.project("1"), horizon)
    if alt > best:
        best_e, best = "1", alt
    return best_e, best


def rho(nu: SymbolSource, n: int, horizon: Optional[int] = None) -> Depth:
    """Least k > n with nu_k != nu_(k-n)"""
    if n < 1:
        raise ValueError(f"rho is defined for n >= 1, got {n}")
    if nu.has_star:
        raise InvalidSequenceError(f"rho needs a *-free word, got {nu}", invariant="star-free")
    d = diff(nu.shift(n), nu, horizon)
    if is_infinite(d):
        return INFINITY
    if isinstance(d, BeyondHorizon):
        return BeyondHorizon(d.horizon + n)
    return n + d


def _rho_orbit(nu: SymbolSource, max_terms: int, below: Optional[int] = None) -> InternalAddress:
    entries = [1]
    while True:
        nxt = rho(nu, entries[-1])
        if is_infinite(nxt):
            return InternalAddress(tuple(entries), truncated=False)
        if isinstance(nxt, BeyondHorizon):
            return InternalAddress(tuple(entries), truncated=True)
        if below is not None and nxt >= below:
            return InternalAddress(tuple(entries), truncated=True)
        if len(entries) >= max_terms:
            return InternalAddress(tuple(entries), truncated=True)
        entries.append(int(nxt))


def internal_address(nu: SymbolSource, max_terms: Optional[int] = None) -> InternalAddress:
    """
    Internal address as the rho-orbit of 1

    For *-periodic sequences this is the finite address of the upper
    sequence, ending at the period.
    """
    max_terms = max_terms or settings.ADDRESS_MAX_TERMS
    if isinstance(nu, KneadingSequence):
        if nu.is_trivial:
            raise TrivialSequenceError("internal_address")
        if nu.is_star_periodic:
            upper, _ = upper_lower(nu)
            return _rho_orbit(upper, max_terms)
    if nu.has_star:
        raise InvalidSequenceError(f"{nu}: project * before taking the address", invariant="star-free")
    return _rho_orbit(nu, max_terms)


def upper_lower(nu: KneadingSequence) -> Tuple[KneadingSequence, KneadingSequence]:
    """Split a *-periodic sequence into (upper, lower) projections"""
    if not nu.is_star_periodic or nu.is_trivial:
        raise InvalidSequenceError(f"{nu} is not a non-trivial *-periodic sequence", invariant="star-periodic")
    p = nu.period_length
    qualifying, other = [], []
    for e in "01":
        candidate = KneadingSequence.from_word(nu.project(e))
        address = _rho_orbit(candidate, max_terms=p + 1)
        if not address.truncated and address.last == p:
            qualifying.append(candidate)
        else:
            other.append(candidate)
    if len(qualifying) != 1:
        raise AmbiguousProjectionError(
            f"{nu}: {len(qualifying)} projections have a finite address ending at {p}"
        )
    return qualifying[0], other[0]


def is_bifurcation(nu: KneadingSequence) -> Optional[int]:
    """Exact period q < p of some resolution of the period, if one exists"""
    if not nu.is_star_periodic or nu.is_trivial:
        raise InvalidSequenceError(f"{nu} is not a non-trivial *-periodic sequence", invariant="star-periodic")
    p = nu.period_length
    body = nu.period[:-1]
    periods = [len(primitive_root(body + e)) for e in "01"]
    candidates = [q for q in periods if q < p]
    return min(candidates) if candidates else None


def bifurcation_base(nu: KneadingSequence) -> Optional[KneadingSequence]:
    """The *-periodic sequence of period q that nu bifurcates from"""
    q = is_bifurcation(nu)
    if q is None:
        return None
    return KneadingSequence("", nu.period[: q - 1] + "*")


def bifurcation_chain(nu: KneadingSequence) -> List[KneadingSequence]:
    """nu, its base, the base's base, ... until a non-bifurcation or the trivial sequence"""
    chain = [nu]
    current = nu
    while not current.is_trivial:
        base = bifurcation_base(current)
        if base is None:
            break
        chain.append(base)
        current = base
    return chain


def address_to_kneading(
    address: Union[InternalAddress, Sequence[int]], allow_trivial: bool = False
) -> KneadingSequence:
    """
    Build the *-periodic sequence with a given finite internal address

    Each step repeats the current periodic word up to the next entry S and
    flips the symbol at position S.
    """
    if not isinstance(address, InternalAddress):
        address = InternalAddress(tuple(address))
    if address.truncated:
        raise ValueError(f"address {address} is truncated; only finite addresses have a *-periodic sequence")
    if len(address) == 1:
        if allow_trivial:
            return KneadingSequence.trivial()
        raise TrivialSequenceError("address_to_kneading")

    word = "1"
    for s in address.entries[1:]:
        repeated = (word * (s // len(word) + 1))[:s]
        word = repeated[:-1] + ("0" if repeated[-1] == "1" else "1")
    return KneadingSequence("", word[:-1] + "*")


def _is_star_periodic_kneading(source: SymbolSource) -> bool:
    return isinstance(source, KneadingSequence) and source.is_star_periodic


def weak_branch(nu: SymbolSource, other: SymbolSource, horizon: Optional[int] = None) -> KneadingSequence:
    """
    *-periodic sequence mu with Diff(mu, nu) >= k and Diff(mu, other) >= k, k = Diff(nu, other)

    mu has the common part of the internal addresses of the resolutions that
    realize k. When that misses depth k (the realizing resolution is the lower
    sequence of a *-periodic input), the *-periodic input itself is mu.
    """
    e, k = _realizing_symbol(nu, other, horizon)
    if is_infinite(k) or isinstance(k, BeyondHorizon):
        raise ValueError(f"Diff({nu}, {other}) = {k} is not a finite depth")

    chi, chi_other = nu.project(e), other.project(e)
    first = _rho_orbit(chi, max_terms=k, below=k).entries
    second = _rho_orbit(chi_other, max_terms=k, below=k).entries
    common = []
    for s, t in zip(first, second):
        if s != t:
            break
        common.append(s)
    mu = address_to_kneading(common, allow_trivial=True)

    reached = (diff_resolved(mu, nu, horizon), diff_resolved(mu, other, horizon))
    if min(reached) < k:
        fallback = next((s for s in (nu, other) if _is_star_periodic_kneading(s)), None)
        if fallback is not None:
            logger.debug("weak branch falls back to input", prefix=str(mu), mu=str(fallback), k=k)
            mu = fallback
            reached = (diff_resolved(mu, nu, horizon), diff_resolved(mu, other, horizon))
    if min(reached) < k:
        raise PostconditionError(
            "weak branch postcondition failed",
            details={"nu": str(nu), "other": str(other), "mu": str(mu), "k": k, "reached": reached},
        )
    logger.debug("weak branch", nu=str(nu), other=str(other), mu=str(mu), k=k)
    return mu


def precedes_by_address(mu: KneadingSequence, nu: KneadingSequence, max_terms: Optional[int] = None) -> Certificate:
    """
    Sufficient test for mu < nu: the address of mu is a strict prefix of the
    address of nu, or of the lower sequence of a *-periodic nu
    """
    if not mu.is_star_periodic:
        raise InvalidSequenceError(f"{mu} is not *-periodic", invariant="star-periodic")
    own = InternalAddress((1,)) if mu.is_trivial else internal_address(mu)
    terms = max(len(own) + 1, max_terms or 0)

    if own.is_strict_prefix_of(internal_address(nu, terms)):
        return Certificate.YES
    if isinstance(nu, KneadingSequence) and nu.is_star_periodic and not nu.is_trivial:
        _, lower = upper_lower(nu)
        if own.is_strict_prefix_of(internal_address(lower, terms)):
            return Certificate.YES
    return Certificate.NO_EVIDENCE
