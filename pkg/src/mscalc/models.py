"""SL(2)-types, depth sequences and degenerate Whittaker data."""

from typing import Set

from .errors import BadComposition
from .involution import mw_dual
from .partitions import Composition, Partition, conjugate, multiset_sum_all
from .segments import Multisegment, Presentation, Rep


def lengths_partition(m: Multisegment) -> Partition:
    """Each segment contributes ``dim_k`` parts equal to its length."""
    return Partition(tuple(seg.length for seg in m.segments for _ in range(seg.line.dim_k)))


def sl2_type(rep: Rep) -> Partition:
    """The Jordan type of the nilpotent part of the parameter of ``rep^t``."""
    pieces = []
    for factor in rep.factors:
        if factor.presentation == Presentation.L:
            pieces.append(lengths_partition(mw_dual(factor.multisegment)))
        else:
            pieces.append(lengths_partition(factor.multisegment))
    return multiset_sum_all(pieces)


def depth_sequence(rep: Rep) -> Composition:
    """Depth sequence, computed as the conjugate of the SL(2)-type."""
    return conjugate(sl2_type(rep)).to_composition()


def whittaker_positions(d: Composition, n: int) -> Set[int]:
    """Superdiagonal slots ``i`` in ``1..n-1`` on which the character is non-trivial.

    Raises:
        BadComposition: if ``d`` is not a non-increasing positive composition of ``n``
    """
    entries = d.stripped()
    if n <= 0:
        raise BadComposition(f"n must be positive, got {n}")
    if 0 in entries or not Composition(entries).is_non_increasing():
        raise BadComposition(f"{d} is not a non-increasing composition of positive entries")
    if sum(entries) != n:
        raise BadComposition(f"{d} does not sum to {n}")

    excluded = set()
    running = 0
    for entry in entries[:-1]:
        running += entry
        excluded.add(n - running)
    return {i for i in range(1, n) if i not in excluded}


def klyachko_type_from_sl2(rep: Rep) -> int:
    """Number of odd parts of the SL(2)-type.

    Equals the Klyachko type for unitarizable representations.
    """
    return sum(1 for part in sl2_type(rep).parts if part % 2 == 1)
