"""Partition and composition arithmetic."""

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, List

from .errors import InvalidValue


@dataclass(frozen=True)
class Partition:
    """A multiset of positive integers, stored weakly decreasing."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise InvalidValue(f"partition parts must be positive, got {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    def to_composition(self) -> "Composition":
        return Composition(self.parts)

    def to_json(self) -> List[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True, eq=False)
class Composition:
    """An ordered list of non-negative integers; equal up to trailing zeros."""

    entries: tuple[int, ...] = field(default=())

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if any(e < 0 for e in entries):
            raise InvalidValue(f"composition entries must be non-negative, got {self.entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> "Composition":
        return cls(tuple(entries))

    def stripped(self) -> tuple[int, ...]:
        """Entries with trailing zeros removed."""
        entries = list(self.entries)
        while entries and entries[-1] == 0:
            entries.pop()
        return tuple(entries)

    @property
    def degree(self) -> int:
        return sum(self.entries)

    def is_non_increasing(self) -> bool:
        return all(x >= y for x, y in zip(self.entries, self.entries[1:]))

    def to_partition(self) -> Partition:
        """Lossless conversion for weakly decreasing positive entries."""
        entries = self.stripped()
        if not Composition(entries).is_non_increasing() or 0 in entries:
            raise InvalidValue(f"composition {self} is not a partition")
        return Partition(entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Composition):
            return NotImplemented
        return self.stripped() == other.stripped()

    def __hash__(self) -> int:
        return hash(self.stripped())

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> List[int]:
        return list(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"


def conjugate(p: Partition) -> Partition:
    """Transpose of the Young diagram of p."""
    if not p.parts:
        return Partition()
    return Partition(tuple(sum(1 for part in p.parts if part > i) for i in range(p.parts[0])))


def add_pointwise(c1: Composition, c2: Composition) -> Composition:
    """Coordinate-wise sum, zero-padding the shorter operand."""
    width = max(len(c1.entries), len(c2.entries))
    left = c1.entries + (0,) * (width - len(c1.entries))
    right = c2.entries + (0,) * (width - len(c2.entries))
    return Composition(tuple(x + y for x, y in zip(left, right)))


def repeat_pointwise(d: int, c: Composition) -> Composition:
    """The d-fold pointwise sum c +_c ... +_c c."""
    if d <= 0:
        raise InvalidValue(f"repetition count must be positive, got {d}")
    return reduce(add_pointwise, [c] * d)


def scale_multiplicity(d: int, p: Partition) -> Partition:
    """Repeat each part of p d times."""
    if d <= 0:
        raise InvalidValue(f"multiplicity factor must be positive, got {d}")
    return Partition(tuple(part for part in p.parts for _ in range(d)))


def multiset_sum(p1: Partition, p2: Partition) -> Partition:
    return Partition(p1.parts + p2.parts)


def multiset_sum_all(partitions: Iterable[Partition]) -> Partition:
    return reduce(multiset_sum, partitions, Partition())
