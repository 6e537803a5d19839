"""
Run configuration for the command line front end
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from core_entropy.core.config import settings


class Command(str, Enum):
    KNEADING = "kneading"
    ADDRESS = "address"
    ENTROPY = "entropy"
    CENSUS = "census"
    RENORM = "renorm"
    SCAN = "scan"
    FEIGENBAUM = "feigenbaum"
    MONOTONICITY = "monotonicity"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    """Everything a run depends on besides Settings; echoed into every artifact"""
    command: Command
    angle: Optional[str] = Field(None, description="Angle as p/q")
    sequence: Optional[str] = Field(None, description="Kneading sequence as PRE(PER)")
    sequences: List[str] = Field(default_factory=list, description="Corpus for monotonicity sweeps")
    n_max: Optional[int] = Field(None, ge=1, description="Census depth, or the Feigenbaum level")
    max_terms: int = Field(default_factory=lambda: settings.ADDRESS_MAX_TERMS, ge=1)
    p_max: Optional[int] = Field(None, ge=2, description="Largest renormalization period tried")
    m_min: int = Field(default_factory=lambda: settings.SCAN_MIN_SCALE, ge=1)
    m_max: int = Field(default_factory=lambda: settings.SCAN_MAX_SCALE, ge=1)
    offsets: List[int] = Field(default_factory=lambda: list(settings.SCAN_OFFSETS))
    tolerance: float = Field(default_factory=lambda: settings.SPECTRAL_TOLERANCE, gt=0)
    estimate: bool = Field(False, description="Census growth estimate instead of the exact value")
    output: Optional[str] = Field(None, description="Output path; stdout when unset")
    format: OutputFormat = OutputFormat.JSON

    def echo(self) -> dict:
        """Config as emitted in artifact headers; output location is not part of the result"""
        return self.model_dump(mode="json", exclude={"output"})
