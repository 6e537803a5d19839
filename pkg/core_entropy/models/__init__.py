from core_entropy.models.angle import Angle, OrbitShape
from core_entropy.models.kneading import (
    BoundedStream,
    EventuallyPeriodicWord,
    InternalAddress,
    KneadingSequence,
    SymbolSource,
)
from core_entropy.models.symbols import INFINITY, BeyondHorizon, Depth, Symbol

__all__ = [
    "Angle",
    "OrbitShape",
    "BoundedStream",
    "EventuallyPeriodicWord",
    "InternalAddress",
    "KneadingSequence",
    "SymbolSource",
    "INFINITY",
    "BeyondHorizon",
    "Depth",
    "Symbol",
]
