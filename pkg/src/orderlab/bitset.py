"""Subsets of a finite universe stored as bit masks.

An ``ElementSet`` pairs an integer mask with the size ``n`` of its
universe; bit ``i`` set means element ``i`` is a member.  All set
algebra is plain integer arithmetic, so subsets of posets up to the
supported sizes cost one machine word each.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import IndexOutOfRange, PosetMismatch


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def iter_submasks(mask: int) -> Iterator[int]:
    """Yield every nonempty submask of ``mask`` (descending order)."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


@dataclass(frozen=True, slots=True)
class ElementSet:
    """A subset of {0..n-1} as a bit mask over a fixed universe."""

    bits: int
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise IndexOutOfRange(f"negative universe size {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise IndexOutOfRange(
                f"mask {self.bits:#x} does not fit a universe of {self.n}"
            )

    # -- constructors ---------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "ElementSet":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls((1 << n) - 1, n)

    @classmethod
    def single(cls, n: int, i: int) -> "ElementSet":
        if not 0 <= i < n:
            raise IndexOutOfRange(f"index {i} outside 0..{n - 1}")
        return cls(1 << i, n)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "ElementSet":
        mask = 0
        for i in indices:
            if not 0 <= i < n:
                raise IndexOutOfRange(f"index {i} outside 0..{n - 1}")
            mask |= 1 << i
        return cls(mask, n)

    @classmethod
    def parse(cls, n: int, text: str) -> "ElementSet":
        """Parse the textual form used on the command line, e.g. "0,2"."""
        text = text.strip()
        if not text:
            return cls(0, n)
        try:
            indices = [int(part) for part in text.split(",")]
        except ValueError as exc:
            raise IndexOutOfRange(f"cannot parse element list {text!r}") from exc
        return cls.from_indices(n, indices)

    # -- rendering ------------------------------------------------------

    def indices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    def text(self) -> str:
        return ",".join(str(i) for i in self.indices())

    def __repr__(self):
        return f"ElementSet([{self.text()}], n={self.n})"

    # -- set algebra ----------------------------------------------------

    def _check(self, other: "ElementSet") -> None:
        if self.n != other.n:
            raise PosetMismatch(f"universe {other.n} differs from {self.n}")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.bits | other.bits, self.n)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.bits & other.bits, self.n)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.bits & ~other.bits, self.n)

    def __xor__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.bits ^ other.bits, self.n)

    def complement(self) -> "ElementSet":
        return ElementSet(self.bits ^ ((1 << self.n) - 1), self.n)

    def __le__(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "ElementSet") -> bool:
        return other <= self

    def __gt__(self, other: "ElementSet") -> bool:
        return other < self

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.n and self.bits >> i & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0
