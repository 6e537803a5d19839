"""
Continuity experiments: Hoelder scans, exponent fits, the Feigenbaum table and monotonicity sweeps
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from core_entropy.core.config import settings
from core_entropy.core.exceptions import InsufficientDataError, PostconditionError
from core_entropy.models.angle import Angle
from core_entropy.models.kneading import KneadingSequence
from core_entropy.models.symbols import Depth, format_depth, is_infinite
from core_entropy.services.angle_service import circle_distance, kneading_of_angle
from core_entropy.services.census_service import census
from core_entropy.services.entropy_service import LOG2, EntropyResult, entropy_exact
from core_entropy.services.symbolic_service import (
    Certificate,
    address_to_kneading,
    diff_resolved,
    internal_address,
    precedes_by_address,
)

logger = structlog.get_logger(__name__)

MIN_FIT_RECORDS = 8
MIN_FIT_SCALES = 4
MAX_FEIGENBAUM_LEVEL = 12
MONOTONICITY_SLACK = 1e-10


@dataclass(frozen=True)
class ScanRecord:
    m: int
    j: int
    sign: int
    phi: Angle
    distance: Fraction
    k: Depth
    h_theta: float
    h_phi: EntropyResult
    delta_h: float
    zero_delta: bool

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return self.m, self.j, self.sign

    def as_row(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "j": self.j,
            "sign": self.sign,
            "phi": self.phi.text,
            "distance": f"{self.distance.numerator}/{self.distance.denominator}",
            "k": format_depth(self.k),
            "h_phi": self.h_phi.value,
            "delta_h": self.delta_h,
        }


@dataclass(frozen=True)
class HolderFit:
    exponent: float
    target: float
    sample_size: int
    residual: float
    scales: Tuple[int, ...]
    zero_records: int
    intercept: float = 0.0


def _scan_point(
    theta: Angle, nu: KneadingSequence, h_theta: float, m: int, j: int, sign: int
) -> Optional[ScanRecord]:
    phi = Angle.wrap(theta.value + sign * Fraction(j, 2 ** m))
    if phi == theta or phi.value == 0:
        return None
    nu_phi = kneading_of_angle(phi)
    k = diff_resolved(nu, nu_phi)
    if is_infinite(k):
        return None
    h_phi = entropy_exact(nu_phi)
    delta_h = abs(h_theta - h_phi.value)
    return ScanRecord(
        m=m,
        j=j,
        sign=sign,
        phi=phi,
        distance=circle_distance(theta, phi),
        k=k,
        h_theta=h_theta,
        h_phi=h_phi,
        delta_h=delta_h,
        zero_delta=delta_h < settings.ZERO_DELTA_TOLERANCE,
    )


def holder_scan(
    theta: Angle,
    m_min: Optional[int] = None,
    m_max: Optional[int] = None,
    offsets: Optional[Sequence[int]] = None,
) -> List[ScanRecord]:
    """
    Sample phi = theta +- j 2^-m at every scale and compare entropies

    Args:
        theta: non-zero rational angle
        m_min, m_max: scale range (inclusive)
        offsets: the j values sampled at each scale

    Returns:
        Records sorted by (m, j, sign); phi equal to theta or 0, and phi with
        infinite Diff, are skipped
    """
    m_min = m_min if m_min is not None else settings.SCAN_MIN_SCALE
    m_max = m_max if m_max is not None else settings.SCAN_MAX_SCALE
    offsets = list(offsets) if offsets else list(settings.SCAN_OFFSETS)
    if m_min < 1 or m_max < m_min:
        raise ValueError(f"invalid scale range {m_min}..{m_max}")
    if any(j < 1 for j in offsets):
        raise ValueError(f"offsets must be positive, got {offsets}")

    nu = kneading_of_angle(theta)
    h_theta = entropy_exact(nu).value
    tasks = [(m, j, sign) for m in range(m_min, m_max + 1) for j in offsets for sign in (-1, 1)]

    with ThreadPoolExecutor(max_workers=settings.threads) as executor:
        results = list(executor.map(lambda t: _scan_point(theta, nu, h_theta, *t), tasks))

    records = sorted((r for r in results if r is not None), key=lambda r: r.sort_key)
    if not records:
        raise InsufficientDataError(f"scan around {theta} produced no records")
    logger.info(
        "holder scan",
        angle=theta.text,
        scales=f"{m_min}..{m_max}",
        records=len(records),
        zero_records=sum(r.zero_delta for r in records),
    )
    return records


def fit_exponent(records: Iterable[ScanRecord], target: Optional[float] = None) -> HolderFit:
    """
    Least-squares slope of log(delta_h) against log(distance)

    Only records with finite k and delta_h above the zero tolerance enter the
    fit; the others are counted in zero_records.
    """
    records = list(records)
    usable = [r for r in records if not is_infinite(r.k) and not r.zero_delta and r.delta_h > 0]
    scales = tuple(sorted({r.m for r in usable}))
    if len(usable) < MIN_FIT_RECORDS or len(scales) < MIN_FIT_SCALES:
        raise InsufficientDataError(
            f"fit needs {MIN_FIT_RECORDS} records over {MIN_FIT_SCALES} scales, "
            f"got {len(usable)} over {len(scales)}"
        )

    x = np.log(np.array([float(r.distance) for r in usable]))
    y = np.log(np.array([r.delta_h for r in usable]))
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))

    if target is None:
        target = usable[0].h_theta / LOG2
    return HolderFit(
        exponent=float(slope),
        target=float(target),
        sample_size=len(usable),
        residual=residual,
        scales=scales,
        zero_records=len(records) - len(usable),
        intercept=float(intercept),
    )


@dataclass(frozen=True)
class FeigenbaumRow:
    n: int
    sequence: str
    entropy: float
    diff: int
    bound: float
    ratio: float

    def as_row(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "sequence": self.sequence,
            "entropy": self.entropy,
            "diff": self.diff,
            "bound": self.bound,
            "ratio": self.ratio,
        }


def cascade_address(level: int) -> List[int]:
    """1-2-4-...-2^level"""
    return [2 ** i for i in range(level + 1)]


def feigenbaum_counterexample(n_max: int = 8) -> List[FeigenbaumRow]:
    """
    Entropy against distance to the period-doubling limit

    nu_n has address 1-2-...-2^n-(2^n + 1); the cascade member
    1-2-...-2^(n_max + 1) stands in for the limit, which agrees with it far
    beyond every compared position.
    """
    if not 1 <= n_max <= MAX_FEIGENBAUM_LEVEL:
        raise ValueError(f"n_max must be in 1..{MAX_FEIGENBAUM_LEVEL}, got {n_max}")
    proxy = address_to_kneading(cascade_address(n_max + 1))
    horizon = 2 ** (n_max + 2)

    rows = []
    for n in range(1, n_max + 1):
        nu = address_to_kneading(cascade_address(n) + [2 ** n + 1])
        h = entropy_exact(nu).value
        d = diff_resolved(nu, proxy, horizon)
        if is_infinite(d):
            raise PostconditionError("cascade proxy does not separate", details={"n": n, "sequence": nu.text})
        bound = LOG2 / 2 ** n
        row = FeigenbaumRow(n=n, sequence=nu.text, entropy=h, diff=int(d), bound=bound, ratio=h * int(d) / LOG2)
        if not (row.entropy > row.bound and row.ratio > 1):
            raise PostconditionError("entropy falls below the cascade bound", details=row.as_row())
        logger.debug("feigenbaum row", **row.as_row())
        rows.append(row)
    return rows


@dataclass(frozen=True)
class MonotonicityViolation:
    mu: str
    nu: str
    kind: str
    depth: Optional[int]
    detail: str

    def as_dict(self) -> Dict[str, Any]:
        return {"mu": self.mu, "nu": self.nu, "kind": self.kind, "depth": self.depth, "detail": self.detail}


@dataclass
class MonotonicityReport:
    pairs_checked: int = 0
    excluded: int = 0
    violations: List[MonotonicityViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> Dict[str, Any]:
        return {
            "pairs_checked": self.pairs_checked,
            "excluded": self.excluded,
            "passed": self.passed,
            "violations": [v.as_dict() for v in self.violations],
        }


def _counts(nu: KneadingSequence, n_max: int) -> Tuple[int, ...]:
    if nu.is_trivial:
        return (0,) * (n_max + 1)
    return census(nu, n_max).counts


def _entropy(nu: KneadingSequence) -> float:
    return 0.0 if nu.is_trivial else entropy_exact(nu).value


def _check_pair(mu: KneadingSequence, nu: KneadingSequence, n_max: int) -> Optional[List[MonotonicityViolation]]:
    if mu == nu or not mu.is_star_periodic or precedes_by_address(mu, nu) != Certificate.YES:
        return None
    violations = []
    low, high = _counts(mu, n_max), _counts(nu, n_max)
    for n in range(1, n_max + 1):
        if low[n] > high[n]:
            violations.append(
                MonotonicityViolation(mu.text, nu.text, "census", n, f"N_mu={low[n]} > N_nu={high[n]}")
            )
            break
    h_mu, h_nu = _entropy(mu), _entropy(nu)
    if h_mu > h_nu + MONOTONICITY_SLACK:
        violations.append(MonotonicityViolation(mu.text, nu.text, "entropy", None, f"h_mu={h_mu} > h_nu={h_nu}"))
    return violations


def monotonicity_sweep(
    pairs: Iterable[Tuple[KneadingSequence, KneadingSequence]], n_max: Optional[int] = None
) -> MonotonicityReport:
    """
    Check census domination and entropy order on address-certified pairs mu < nu

    Pairs without a certificate (mu == nu, or mu not *-periodic) are excluded,
    not failed.
    """
    n_max = n_max or settings.CENSUS_HORIZON
    pairs = list(pairs)
    with ThreadPoolExecutor(max_workers=settings.threads) as executor:
        outcomes = list(executor.map(lambda pair: _check_pair(pair[0], pair[1], n_max), pairs))

    report = MonotonicityReport()
    for outcome in outcomes:
        if outcome is None:
            report.excluded += 1
            continue
        report.pairs_checked += 1
        report.violations.extend(outcome)
    if report.violations:
        logger.warning("monotonicity violations", count=len(report.violations))
    logger.info("monotonicity sweep", checked=report.pairs_checked, excluded=report.excluded)
    return report


def certified_pairs(
    sequences: Iterable[KneadingSequence], max_terms: Optional[int] = None
) -> List[Tuple[KneadingSequence, KneadingSequence]]:
    """
    Pairs (mu, nu) where mu is built from a strict prefix (two entries or
    more) of the internal address of nu
    """
    found = {}
    for nu in sequences:
        if nu.is_trivial:
            continue
        address = internal_address(nu, max_terms)
        for length in range(2, len(address)):
            mu = address_to_kneading(address.entries[:length])
            if precedes_by_address(mu, nu) == Certificate.YES:
                found[(mu.text, nu.text)] = (mu, nu)
    return [found[key] for key in sorted(found)]
