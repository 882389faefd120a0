"""Bitmask-backed subsets of a finite atom universe.

Atoms are integers 0..universe_size-1 and a subset is an int whose bit i is
set iff atom i is a member.  All set algebra is plain integer arithmetic,
which keeps the closure / search inner loops cheap.  AtomSet is the hashable
value type used at API boundaries; hot loops work on raw masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InputError, UniverseMismatch


def bit_members(mask: int) -> tuple[int, ...]:
    """Indices of the set bits of mask, ascending."""
    out = []
    m = mask
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return tuple(out)


def mask_from_members(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << i
    return m


def canonical_mask_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key giving the canonical family order: cardinality first, then
    lexicographic on the sorted member list."""
    bits = bit_members(mask)
    return (len(bits), bits)


@dataclass(frozen=True)
class AtomSet:
    universe_size: int
    mask: int

    def __post_init__(self) -> None:
        if self.universe_size < 0:
            raise InputError(f"negative universe size {self.universe_size}")
        if self.mask < 0 or self.mask >> self.universe_size:
            raise InputError(
                f"mask {self.mask:#x} does not fit universe of size {self.universe_size}"
            )

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_members(cls, universe_size: int, members: Iterable[int]) -> "AtomSet":
        m = 0
        for i in members:
            if not 0 <= i < universe_size:
                raise InputError(f"atom {i} outside universe of size {universe_size}")
            m |= 1 << i
        return cls(universe_size, m)

    @classmethod
    def empty(cls, universe_size: int) -> "AtomSet":
        return cls(universe_size, 0)

    @classmethod
    def full(cls, universe_size: int) -> "AtomSet":
        return cls(universe_size, (1 << universe_size) - 1)

    @classmethod
    def singleton(cls, universe_size: int, atom: int) -> "AtomSet":
        if not 0 <= atom < universe_size:
            raise InputError(f"atom {atom} outside universe of size {universe_size}")
        return cls(universe_size, 1 << atom)

    # -- queries -----------------------------------------------------------

    @property
    def members(self) -> tuple[int, ...]:
        return bit_members(self.mask)

    def __contains__(self, atom: int) -> bool:
        return 0 <= atom < self.universe_size and bool(self.mask >> atom & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __bool__(self) -> bool:
        return self.mask != 0

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return canonical_mask_key(self.mask)

    def issubset(self, other: "AtomSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def issuperset(self, other: "AtomSet") -> bool:
        self._check(other)
        return other.mask & ~self.mask == 0

    # -- algebra -----------------------------------------------------------

    def _check(self, other: "AtomSet") -> None:
        if self.universe_size != other.universe_size:
            raise UniverseMismatch(
                f"universe sizes differ: {self.universe_size} vs {other.universe_size}"
            )

    def __and__(self, other: "AtomSet") -> "AtomSet":
        self._check(other)
        return AtomSet(self.universe_size, self.mask & other.mask)

    def __or__(self, other: "AtomSet") -> "AtomSet":
        self._check(other)
        return AtomSet(self.universe_size, self.mask | other.mask)

    def __sub__(self, other: "AtomSet") -> "AtomSet":
        self._check(other)
        return AtomSet(self.universe_size, self.mask & ~other.mask)

    def __repr__(self) -> str:
        return f"AtomSet({self.universe_size}, {{{', '.join(map(str, self.members))}}})"
