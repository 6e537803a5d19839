"""
Kneading sequences, eventually periodic words, bounded streams and internal addresses
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

from core_entropy.core.exceptions import HorizonError, InvalidSequenceError
from core_entropy.models.symbols import ALPHABET, Symbol


def primitive_root(word: str) -> str:
    """Shortest word u with word == u * k"""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def canonical_form(preperiod: str, period: str) -> Tuple[str, str]:
    """Minimize the period, then roll the preperiod into the period while possible"""
    period = primitive_root(period)
    while preperiod and preperiod[-1] == period[-1]:
        period = period[-1] + period[:-1]
        preperiod = preperiod[:-1]
    return preperiod, period


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """
    Infinite word preperiod . period . period ... over {0, 1, *}, kept canonical.

    No kneading invariants are enforced here; shifts and projections of
    kneading sequences land in this type.
    """
    preperiod: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise InvalidSequenceError("period must be non-empty", invariant="non-empty period")
        bad = set(self.preperiod + self.period) - ALPHABET
        if bad:
            raise InvalidSequenceError(f"symbols {sorted(bad)} outside {{0,1,*}}", invariant="alphabet")
        preperiod, period = canonical_form(self.preperiod, self.period)
        object.__setattr__(self, "preperiod", preperiod)
        object.__setattr__(self, "period", period)

    @property
    def preperiod_length(self) -> int:
        return len(self.preperiod)

    @property
    def period_length(self) -> int:
        return len(self.period)

    @property
    def window(self) -> int:
        """Positions needed to see the preperiod and one full period"""
        return len(self.preperiod) + len(self.period)

    @property
    def horizon(self) -> Optional[int]:
        return None

    @property
    def is_eventually_periodic(self) -> bool:
        return True

    @property
    def has_star(self) -> bool:
        return "*" in self.period or "*" in self.preperiod

    @property
    def is_star_free(self) -> bool:
        return not self.has_star

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod

    @property
    def text(self) -> str:
        return f"{self.preperiod}({self.period})"

    def __str__(self) -> str:
        return self.text

    def char(self, k: int) -> str:
        """k-th symbol (1-based) as a one-character string"""
        if k < 1:
            raise ValueError(f"positions are 1-based, got {k}")
        pre = len(self.preperiod)
        if k <= pre:
            return self.preperiod[k - 1]
        return self.period[(k - pre - 1) % len(self.period)]

    def entry(self, k: int) -> Symbol:
        return Symbol(self.char(k))

    def prefix(self, n: int) -> str:
        return "".join(self.char(k) for k in range(1, n + 1))

    def reduce_offset(self, offset: int) -> int:
        """Canonical index of the shift by `offset`: shifts past the preperiod repeat with the period"""
        pre = len(self.preperiod)
        if offset < pre:
            return offset
        return pre + (offset - pre) % len(self.period)

    def shift(self, n: int) -> "EventuallyPeriodicWord":
        pre = len(self.preperiod)
        if n <= pre:
            return EventuallyPeriodicWord(self.preperiod[n:], self.period)
        r = (n - pre) % len(self.period)
        return EventuallyPeriodicWord("", self.period[r:] + self.period[:r])

    def project(self, e: Union[Symbol, str]) -> "EventuallyPeriodicWord":
        e = Symbol(e)
        if not e.is_concrete:
            raise ValueError("projection target must be 0 or 1")
        return EventuallyPeriodicWord(
            self.preperiod.replace("*", e.value), self.period.replace("*", e.value)
        )

    def relabel(self) -> "EventuallyPeriodicWord":
        """Exchange 0 and 1, keeping stars"""
        table = str.maketrans("01", "10")
        return EventuallyPeriodicWord(self.preperiod.translate(table), self.period.translate(table))


@dataclass(frozen=True)
class KneadingSequence(EventuallyPeriodicWord):
    """Eventually periodic word that starts with 1, or the trivial sequence (*)"""

    def __post_init__(self):
        super().__post_init__()
        stars = self.period.count("*")
        if "*" in self.preperiod or stars > 1 or (stars and self.preperiod):
            raise InvalidSequenceError(
                f"{self.text}: * may occur only once, at the end of a purely periodic period",
                invariant="star-periodic form",
            )
        if stars == 1 and not self.period.endswith("*"):
            raise InvalidSequenceError(
                f"{self.text}: * must be the last symbol of the period",
                invariant="star-periodic form",
            )
        if not self.is_trivial and self.char(1) != "1":
            raise InvalidSequenceError(
                f"{self.text}: non-trivial kneading sequences start with 1",
                invariant="leading symbol",
            )

    @classmethod
    def from_word(cls, word: EventuallyPeriodicWord) -> "KneadingSequence":
        return cls(word.preperiod, word.period)

    @classmethod
    def trivial(cls) -> "KneadingSequence":
        return cls("", "*")

    @property
    def is_trivial(self) -> bool:
        return self.preperiod == "" and self.period == "*"

    @property
    def is_star_periodic(self) -> bool:
        return self.period.endswith("*")


@dataclass(frozen=True)
class BoundedStream:
    """
    Finite prefix of an arbitrary symbol sequence.

    Operations reading past `horizon` raise HorizonError instead of guessing
    the tail.
    """
    symbols: str
    horizon: int = field(default=-1)

    def __post_init__(self):
        bad = set(self.symbols) - ALPHABET
        if bad:
            raise InvalidSequenceError(f"symbols {sorted(bad)} outside {{0,1,*}}", invariant="alphabet")
        horizon = len(self.symbols) if self.horizon < 0 else self.horizon
        if horizon > len(self.symbols):
            raise HorizonError(f"horizon {horizon} exceeds the {len(self.symbols)} supplied symbols")
        object.__setattr__(self, "horizon", horizon)

    @classmethod
    def from_function(cls, source: Callable[[int], Union[Symbol, str]], horizon: int) -> "BoundedStream":
        if horizon < 1:
            raise HorizonError(f"horizon must be positive, got {horizon}")
        return cls("".join(Symbol(source(k)).value for k in range(1, horizon + 1)), horizon)

    @property
    def is_eventually_periodic(self) -> bool:
        return False

    @property
    def has_star(self) -> bool:
        return "*" in self.symbols[: self.horizon]

    @property
    def text(self) -> str:
        return f"{self.symbols[: self.horizon]}..."

    def __str__(self) -> str:
        return self.text

    def char(self, k: int) -> str:
        if k < 1:
            raise ValueError(f"positions are 1-based, got {k}")
        if k > self.horizon:
            raise HorizonError(f"position {k} is beyond the stream horizon {self.horizon}")
        return self.symbols[k - 1]

    def entry(self, k: int) -> Symbol:
        return Symbol(self.char(k))

    def reduce_offset(self, offset: int) -> int:
        return offset

    def shift(self, n: int) -> "BoundedStream":
        return BoundedStream(self.symbols[n: self.horizon], max(self.horizon - n, 0))

    def project(self, e: Union[Symbol, str]) -> "BoundedStream":
        e = Symbol(e)
        if not e.is_concrete:
            raise ValueError("projection target must be 0 or 1")
        return BoundedStream(self.symbols.replace("*", e.value), self.horizon)


SymbolSource = Union[EventuallyPeriodicWord, BoundedStream]


@dataclass(frozen=True)
class InternalAddress:
    """Strictly increasing integers starting at 1; truncated when cut at a horizon"""
    entries: Tuple[int, ...]
    truncated: bool = False

    def __post_init__(self):
        entries = tuple(int(s) for s in self.entries)
        if not entries or entries[0] != 1:
            raise InvalidSequenceError("internal addresses start with 1", invariant="address start")
        if any(b <= a for a, b in zip(entries, entries[1:])):
            raise InvalidSequenceError(
                f"address {entries} is not strictly increasing", invariant="address order"
            )
        object.__setattr__(self, "entries", entries)

    @property
    def text(self) -> str:
        body = "-".join(str(s) for s in self.entries)
        return f"{body}-..." if self.truncated else body

    @property
    def last(self) -> int:
        return self.entries[-1]

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return self.text

    def is_strict_prefix_of(self, other: "InternalAddress") -> bool:
        n = len(self.entries)
        return len(other.entries) > n and other.entries[:n] == self.entries
