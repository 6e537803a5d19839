"""
Output schemas for emitted artifacts
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from core_entropy.services.entropy_service import EntropyResult, RecurrenceWitness
from core_entropy.services.holder_service import HolderFit, MonotonicityReport
from core_entropy.services.renormalization_service import EntropyIdentityReport, RenormalizationCertificate


class KneadingOutput(BaseModel):
    """Kneading sequence of an angle"""
    angle: str = Field(..., description="Angle as p/q")
    sequence: str = Field(..., description="Canonical PRE(PER) text")
    preperiod: int = Field(..., description="Orbit preperiod under doubling")
    period: int = Field(..., description="Orbit period under doubling")
    recurrent_angle: bool = Field(..., description="Angle is periodic under doubling")


class AddressOutput(BaseModel):
    """Internal address of a sequence"""
    sequence: str
    address: str = Field(..., description="1-3-5 form, trailing -... when truncated")
    truncated: bool
    upper: Optional[str] = Field(None, description="Upper projection of a *-periodic sequence")
    lower: Optional[str] = Field(None, description="Lower projection of a *-periodic sequence")
    bifurcation_period: Optional[int] = Field(None, description="Exact period of a collapsing resolution")


class EntropyOutput(BaseModel):
    """Entropy value with its bracket"""
    sequence: str
    value: float
    lower: float
    upper: float
    kind: str
    evidence: Dict[str, Any] = Field(default_factory=dict)
    recurrence: Optional[Dict[str, Any]] = Field(None, description="Non-recurrence witness")

    @classmethod
    def from_result(
        cls, sequence: str, result: EntropyResult, witness: Optional[RecurrenceWitness] = None
    ) -> "EntropyOutput":
        return cls(
            sequence=sequence,
            value=result.value,
            lower=result.lower_bound,
            upper=result.upper_bound,
            kind=result.kind.value,
            evidence=result.evidence,
            recurrence=witness.as_dict() if witness else None,
        )


class CertificateOutput(BaseModel):
    """Renormalization certificate"""
    p: int
    base: str
    dynamical: str
    dynamical_projection: str = Field(..., description="upper or lower")
    eta: str = Field(..., description="De-renormalized sequence")
    certified: bool
    identity: Optional[Dict[str, Any]] = Field(None, description="Entropy identity report for certified entries")

    @classmethod
    def from_certificate(
        cls, certificate: RenormalizationCertificate, identity: Optional[EntropyIdentityReport] = None
    ) -> "CertificateOutput":
        return cls(**certificate.as_dict(), identity=identity.as_dict() if identity else None)


class RenormOutput(BaseModel):
    sequence: str
    certificates: List[CertificateOutput] = Field(default_factory=list)
    maximal_base_chain: List[int] = Field(default_factory=list, description="Periods of the certified chain")


class FitOutput(BaseModel):
    """Hoelder exponent fit"""
    exponent: float
    target: float
    residual: float
    n_records: int
    scales: List[int]
    zero_records: int

    @classmethod
    def from_fit(cls, fit: HolderFit) -> "FitOutput":
        return cls(
            exponent=fit.exponent,
            target=fit.target,
            residual=fit.residual,
            n_records=fit.sample_size,
            scales=list(fit.scales),
            zero_records=fit.zero_records,
        )


class MonotonicityOutput(BaseModel):
    pairs_checked: int
    excluded: int
    passed: bool
    violations: List[Dict[str, Any]] = Field(default_factory=list)

    @classmethod
    def from_report(cls, report: MonotonicityReport) -> "MonotonicityOutput":
        return cls(**report.as_dict())
