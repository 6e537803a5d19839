"""
Exception hierarchy for the core entropy engine
"""

from typing import Any, Dict, Optional


class CoreEntropyError(Exception):
    """Base class for every error raised by the engine"""


class SequenceParseError(CoreEntropyError, ValueError):
    """Text does not follow the PRE(PER) / p/q / 1-3-5 grammars"""

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


class InvalidSequenceError(CoreEntropyError, ValueError):
    """A word violates one of the kneading sequence invariants"""

    def __init__(self, message: str, invariant: str = "kneading"):
        self.invariant = invariant
        super().__init__(f"{message} (invariant: {invariant})")


class TrivialSequenceError(InvalidSequenceError):
    """Operation requires a non-trivial kneading sequence"""

    def __init__(self, operation: str):
        super().__init__(f"{operation} is undefined for the trivial sequence (*)", invariant="non-trivial")


class AngleError(CoreEntropyError, ValueError):
    """Angle outside [0, 1), malformed, or without a kneading sequence"""


class HorizonError(CoreEntropyError, ValueError):
    """Horizon below one, or a bounded stream read past its horizon"""


class AmbiguousProjectionError(CoreEntropyError):
    """Upper/lower classification did not find exactly one candidate"""


class PostconditionError(CoreEntropyError, AssertionError):
    """A checked postcondition failed; details carry the witnesses"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.details = details or {}
        super().__init__(message)


class InsufficientDataError(CoreEntropyError):
    """Not enough usable records for a fit or scan"""


class RenormalizationError(CoreEntropyError, ValueError):
    """Tuning inputs or results violate the kneading invariants"""
