"""
Exact angles on the circle R/Z
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from core_entropy.core.exceptions import AngleError


@dataclass(frozen=True, order=True)
class Angle:
    """Reduced rational in [0, 1)"""
    value: Fraction

    def __post_init__(self):
        value = Fraction(self.value)
        if not 0 <= value < 1:
            raise AngleError(f"angle {value} outside [0, 1)")
        object.__setattr__(self, "value", value)

    @classmethod
    def of(cls, numerator: int, denominator: int = 1) -> "Angle":
        if denominator <= 0:
            raise AngleError(f"denominator must be positive, got {denominator}")
        return cls(Fraction(numerator, denominator))

    @classmethod
    def wrap(cls, value: Union[Fraction, int]) -> "Angle":
        """Reduce any rational modulo 1"""
        return cls(Fraction(value) % 1)

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    @property
    def text(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class OrbitShape:
    """Preperiod and period of an angle under doubling"""
    preperiod: int
    period: int

    @property
    def is_periodic(self) -> bool:
        return self.preperiod == 0

    @property
    def length(self) -> int:
        return self.preperiod + self.period
