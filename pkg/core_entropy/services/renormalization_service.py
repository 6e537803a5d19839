"""
Renormalization: de-renormalization, detection, tuning and the entropy identity
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import structlog

from core_entropy.core.exceptions import (
    InvalidSequenceError,
    PostconditionError,
    RenormalizationError,
    TrivialSequenceError,
)
from core_entropy.models.kneading import EventuallyPeriodicWord, KneadingSequence
from core_entropy.services.entropy_service import entropy_exact
from core_entropy.services.symbolic_service import Certificate, precedes_by_address, upper_lower

logger = structlog.get_logger(__name__)

IDENTITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class RenormalizationCertificate:
    p: int
    base: KneadingSequence
    dynamical: KneadingSequence
    dynamical_projection: str
    derenormalized: KneadingSequence
    certified: bool

    def as_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "base": self.base.text,
            "dynamical": self.dynamical.text,
            "dynamical_projection": self.dynamical_projection,
            "eta": self.derenormalized.text,
            "certified": self.certified,
        }


def _to_kneading(word: EventuallyPeriodicWord) -> KneadingSequence:
    """Exchange 0 and 1 when the word starts with 0; both sides of * carry the same counts"""
    if word.char(1) == "0":
        word = word.relabel()
    return KneadingSequence.from_word(word)


def derenormalize(nu: EventuallyPeriodicWord, p: int) -> KneadingSequence:
    """
    Subsequence nu_p nu_2p nu_3p ... as a kneading sequence

    Args:
        nu: any eventually periodic word
        p: step, at least 2

    Returns:
        The extracted word, relabelled 0 <-> 1 if it starts with 0
    """
    if p < 2:
        raise ValueError(f"derenormalize needs p >= 2, got {p}")
    # k*p runs past the preperiod from k0 on; then nu_kp repeats with this period
    k0 = nu.preperiod_length // p + 1
    period = nu.period_length // math.gcd(nu.period_length, p)
    preperiod = "".join(nu.char(k * p) for k in range(1, k0))
    body = "".join(nu.char(k * p) for k in range(k0, k0 + period))
    return _to_kneading(EventuallyPeriodicWord(preperiod, body))


def _matches_pattern(nu: KneadingSequence, p: int) -> bool:
    window = nu.preperiod_length + math.lcm(nu.period_length, p)
    for m in range(1, window + 1):
        if m % p and nu.char(m) != nu.char(m % p):
            return False
    return True


def _shift_invariant(nu: KneadingSequence, p: int) -> bool:
    shifted = nu.shift(p)
    return (shifted.preperiod, shifted.period) == (nu.preperiod, nu.period)


def default_p_max(nu: KneadingSequence) -> int:
    if nu.is_star_periodic:
        return nu.period_length
    return nu.preperiod_length + nu.period_length


def detect_renormalizable(nu: KneadingSequence, p_max: Optional[int] = None) -> List[RenormalizationCertificate]:
    """
    Candidate renormalization periods of nu

    A period p qualifies when every position off the multiples of p repeats
    nu_1 ... nu_(p-1) and shift^p(nu) != nu. The certificate is `certified`
    when the address order test confirms base < nu.
    """
    if nu.is_trivial:
        raise TrivialSequenceError("detect_renormalizable")
    p_max = p_max or default_p_max(nu)

    certificates = []
    for p in range(2, p_max + 1):
        if not _matches_pattern(nu, p) or _shift_invariant(nu, p):
            continue
        base = KneadingSequence("", nu.prefix(p - 1) + "*")
        upper, lower = upper_lower(base)
        if nu.char(p) == upper.char(p):
            projection, dynamical = "upper", upper
        else:
            projection, dynamical = "lower", lower
        certified = precedes_by_address(base, nu) == Certificate.YES
        certificates.append(
            RenormalizationCertificate(
                p=p,
                base=base,
                dynamical=dynamical,
                dynamical_projection=projection,
                derenormalized=derenormalize(nu, p),
                certified=certified,
            )
        )
    logger.debug("renormalization scan", sequence=nu.text, p_max=p_max, found=[c.p for c in certificates])
    return certificates


def tune(mu: KneadingSequence, eta: KneadingSequence, standard: bool = False) -> KneadingSequence:
    """
    Interleave the base mu with eta at the multiples of p = period(mu)

    Args:
        mu: non-trivial *-periodic base
        eta: non-trivial kneading sequence
        standard: relabel eta so that nu_p agrees with the upper projection of mu

    Returns:
        nu with derenormalize(nu, p) == eta
    """
    if not isinstance(mu, KneadingSequence) or not mu.is_star_periodic or mu.is_trivial:
        raise RenormalizationError(f"tuning base {mu} must be a non-trivial *-periodic sequence")
    if eta.is_trivial:
        raise TrivialSequenceError("tune")

    p = mu.period_length
    word: EventuallyPeriodicWord = eta
    if standard:
        upper, _ = upper_lower(mu)
        if upper.char(p) == "0":
            word = eta.relabel()

    rigid = mu.period[:-1]
    preperiod = "".join(rigid + s for s in word.preperiod)
    period = "".join(rigid + s for s in word.period)
    try:
        nu = KneadingSequence(preperiod, period)
    except InvalidSequenceError as e:
        raise RenormalizationError(f"tune({mu}, {eta}) violates the kneading invariants: {e}") from e
    logger.debug("tuned", base=mu.text, eta=eta.text, standard=standard, result=nu.text)
    return nu


@dataclass(frozen=True)
class EntropyIdentityReport:
    sequence: str
    p: int
    h_nu: float
    h_base: float
    h_eta: float
    expected: float
    gap: float
    certified: bool

    @property
    def passed(self) -> bool:
        return self.gap < IDENTITY_TOLERANCE

    def as_dict(self) -> Dict[str, Any]:
        return {
            "sequence": self.sequence,
            "p": self.p,
            "h_nu": self.h_nu,
            "h_base": self.h_base,
            "h_eta": self.h_eta,
            "expected": self.expected,
            "gap": self.gap,
            "certified": self.certified,
            "passed": self.passed,
        }


def entropy_identity_check(
    nu: KneadingSequence, certificate: RenormalizationCertificate, strict: bool = True
) -> EntropyIdentityReport:
    """
    Compare h(nu) with max(h(base), h(eta)/p)

    Raises:
        PostconditionError: in strict mode when the gap reaches 1e-9
    """
    h_nu = entropy_exact(nu).value
    h_base = entropy_exact(certificate.base).value
    eta = certificate.derenormalized
    h_eta = 0.0 if eta.is_trivial else entropy_exact(eta).value
    expected = max(h_base, h_eta / certificate.p)
    report = EntropyIdentityReport(
        sequence=nu.text,
        p=certificate.p,
        h_nu=h_nu,
        h_base=h_base,
        h_eta=h_eta,
        expected=expected,
        gap=abs(h_nu - expected),
        certified=certificate.certified,
    )
    if not report.passed:
        logger.warning("entropy identity gap", **report.as_dict())
        if strict:
            raise PostconditionError("entropy identity failed", details=report.as_dict())
    return report


def maximal_base_chain(nu: KneadingSequence) -> List[RenormalizationCertificate]:
    """
    De-renormalize by the smallest certified p until none is left

    The last certificate's eta (or nu itself for an empty chain) has no
    certified renormalization period.
    """
    chain: List[RenormalizationCertificate] = []
    current = nu
    while not current.is_trivial:
        certified = [c for c in detect_renormalizable(current) if c.certified]
        if not certified:
            break
        step = min(certified, key=lambda c: c.p)
        chain.append(step)
        current = step.derenormalized
    return chain
