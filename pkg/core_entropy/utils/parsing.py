"""
Input sanitizing and the text grammars for sequences, angles and addresses
"""

import re
from fractions import Fraction

import structlog

from core_entropy.core.exceptions import AngleError, SequenceParseError
from core_entropy.models.angle import Angle
from core_entropy.models.kneading import EventuallyPeriodicWord, InternalAddress, KneadingSequence

logger = structlog.get_logger(__name__)

_ANGLE_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")


def sanitize_string(value: str) -> str:
    """
    Sanitize a string by removing null bytes and problematic characters

    Args:
        value: The string to sanitize

    Returns:
        Sanitized string with null bytes and control characters removed
    """
    if not isinstance(value, str):
        return value

    # Remove null bytes and control characters
    sanitized = re.sub(r'[\x00-\x08\x0B\x0C\x0E-\x1F\x7F]', '', value)

    # Remove Unicode escape sequences
    sanitized = re.sub(r'\\u[0-9a-fA-F]{4}', '', sanitized)

    sanitized = sanitized.strip()

    if sanitized != value:
        logger.warning("sanitized input", before=len(value), after=len(sanitized))

    return sanitized


def parse_word(text: str) -> EventuallyPeriodicWord:
    """
    Parse `PRE(PER)` into a canonical eventually periodic word

    Args:
        text: e.g. "1(10)", "(1101*)"; the star may also be written as U+2605

    Returns:
        The canonical word; kneading invariants are not checked here
    """
    cleaned = sanitize_string(text).replace("★", "*").replace(" ", "")
    open_at = cleaned.find("(")
    if open_at < 0:
        raise SequenceParseError("missing '('", cleaned, len(cleaned))
    if not cleaned.endswith(")"):
        raise SequenceParseError("expected ')' as the last character", cleaned, len(cleaned) - 1)
    preperiod, period = cleaned[:open_at], cleaned[open_at + 1:-1]
    for offset, chunk in ((0, preperiod), (open_at + 1, period)):
        for i, ch in enumerate(chunk):
            if ch not in "01*":
                raise SequenceParseError(f"unexpected symbol {ch!r}", cleaned, offset + i)
    if not period:
        raise SequenceParseError("empty period", cleaned, open_at + 1)
    return EventuallyPeriodicWord(preperiod, period)


def parse_sequence(text: str) -> KneadingSequence:
    """Parse `PRE(PER)` and enforce the kneading invariants"""
    return KneadingSequence.from_word(parse_word(text))


def parse_angle(text: str) -> Angle:
    """
    Parse a `p/q` fraction string

    Args:
        text: exact fraction, no decimals

    Returns:
        The reduced Angle; values outside (0, 1) are rejected
    """
    cleaned = sanitize_string(text)
    match = _ANGLE_RE.match(cleaned)
    if not match:
        raise AngleError(f"expected an exact fraction p/q, got {cleaned!r}")
    numerator, denominator = int(match.group(1)), int(match.group(2))
    if denominator == 0:
        raise AngleError("zero denominator")
    if numerator == 0:
        raise AngleError("angle 0 has no kneading sequence")
    return Angle(Fraction(numerator, denominator))


def parse_address(text: str) -> InternalAddress:
    """Parse `1-3-5`; a trailing `-...` marks truncation"""
    cleaned = sanitize_string(text).replace(" ", "")
    truncated = cleaned.endswith("-...")
    if truncated:
        cleaned = cleaned[: -len("-...")]
    parts = cleaned.split("-")
    entries = []
    position = 0
    for part in parts:
        if not part.isdigit():
            raise SequenceParseError(f"address entry {part!r} is not a positive integer", text, position)
        entries.append(int(part))
        position += len(part) + 1
    return InternalAddress(tuple(entries), truncated)
