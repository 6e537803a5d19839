"""
Symbol alphabet and depth values
"""

import math
from enum import Enum
from typing import Union


class Symbol(str, Enum):
    """Kneading alphabet; members compare equal to their one-character text"""
    ZERO = "0"
    ONE = "1"
    STAR = "*"

    @property
    def is_concrete(self) -> bool:
        return self is not Symbol.STAR

    def __str__(self) -> str:
        return self.value


ALPHABET = frozenset(s.value for s in Symbol)
CONCRETE = (Symbol.ZERO, Symbol.ONE)

INFINITY = math.inf


class BeyondHorizon(int):
    """
    No difference within `horizon` positions, undecided beyond.

    Behaves as the integer horizon + 1, which is the lower bound it stands for,
    so max() and >= comparisons against depths stay meaningful.
    """

    def __new__(cls, horizon: int):
        obj = super().__new__(cls, horizon + 1)
        obj.horizon = horizon
        return obj

    def __repr__(self) -> str:
        return f"BeyondHorizon(>{self.horizon})"

    __str__ = __repr__


# A positive int, INFINITY, or BeyondHorizon
Depth = Union[int, float]


def is_infinite(depth: Depth) -> bool:
    return isinstance(depth, float) and math.isinf(depth)


def is_resolved(depth: Depth) -> bool:
    return not isinstance(depth, BeyondHorizon)


def format_depth(depth: Depth) -> str:
    if is_infinite(depth):
        return "inf"
    if isinstance(depth, BeyondHorizon):
        return f">{depth.horizon}"
    return str(int(depth))
