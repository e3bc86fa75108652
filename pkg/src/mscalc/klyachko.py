"""Klyachko types of ladders and of products over distinct lines."""

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import DifferentLines, InvalidValue, NotALadder, NotProperLadder, NotTadicForm
from .involution import to_langlands
from .segments import (
    CuspidalLine,
    Multisegment,
    Rep,
    Segment,
    is_ladder,
    is_proper_ladder,
    is_speh,
    ladder_order,
    proper_decomposition,
)

logger = logging.getLogger(__name__)


class KlyachkoTag(Enum):
    ADMITS = "admits"
    NO_MODEL = "no_model"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class KlyachkoResult:
    """Outcome of a Klyachko classification.

    ``pairs`` holds the right-alignment labels that witness an ``ADMITS`` result;
    it is diagnostic only and does not take part in equality.
    """

    tag: KlyachkoTag
    r: Optional[int] = None
    pairs: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.tag == KlyachkoTag.ADMITS and (self.r is None or self.r < 0):
            raise InvalidValue(f"an admitted Klyachko type must be a non-negative integer, got {self.r}")
        if self.tag != KlyachkoTag.ADMITS and self.r is not None:
            raise InvalidValue("only admitted results carry a type")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KlyachkoResult):
            return NotImplemented
        return (self.tag, self.r) == (other.tag, other.r)

    def __hash__(self) -> int:
        return hash((self.tag, self.r))

    @classmethod
    def admits(cls, r: int, pairs: Iterable[int] = ()) -> "KlyachkoResult":
        return cls(KlyachkoTag.ADMITS, r, tuple(pairs))

    @classmethod
    def no_model(cls) -> "KlyachkoResult":
        return cls(KlyachkoTag.NO_MODEL)

    @classmethod
    def unknown(cls) -> "KlyachkoResult":
        return cls(KlyachkoTag.UNKNOWN)

    @property
    def is_admits(self) -> bool:
        return self.tag == KlyachkoTag.ADMITS

    def to_json(self) -> dict:
        data = {"tag": self.tag.value}
        if self.is_admits:
            data["r"] = self.r
            data["pairs"] = list(self.pairs)
        return data

    def __str__(self) -> str:
        if self.is_admits:
            return f"admits r={self.r}"
        return "no model" if self.tag == KlyachkoTag.NO_MODEL else "unknown"


def right_aligned(lower: Segment, upper: Segment) -> Optional[int]:
    """Label ``k(a - a' - 1)`` when ``lower`` is right-aligned with ``upper``, else None."""
    if lower.line != upper.line:
        raise DifferentLines(f"segments {lower} and {upper} lie on different lines")
    if upper.a >= lower.a + 1 and upper.b == lower.b + 1:
        return upper.line.dim_k * (upper.a - lower.a - 1)
    return None


def klyachko_proper_ladder(m: Multisegment) -> KlyachkoResult:
    """Pair segments from the bottom; an odd top segment contributes its degree."""
    if not is_proper_ladder(m):
        raise NotProperLadder(f"{m} is not a proper ladder")
    order = ladder_order(m)
    t = len(order)
    labels: List[int] = []
    for i in range(t // 2):
        lower, upper = order[t - 1 - 2 * i], order[t - 2 - 2 * i]
        label = right_aligned(lower, upper)
        if label is None:
            logger.debug("%s: %s is not right-aligned with %s", m, lower, upper)
            return KlyachkoResult.no_model()
        labels.append(label)
    top = order[0].degree if t % 2 == 1 else 0
    return KlyachkoResult.admits(sum(labels) + top, labels)


def klyachko_ladder(m: Multisegment) -> KlyachkoResult:
    """Classify a ladder through its proper decomposition."""
    if not is_ladder(m):
        raise NotALadder(f"{m} is not a ladder")
    total = 0
    labels: List[int] = []
    for part in proper_decomposition(m):
        result = klyachko_proper_ladder(part)
        if not result.is_admits:
            return result
        total += result.r
        labels.extend(result.pairs)
    return KlyachkoResult.admits(total, labels)


def _combine_admitted(results: List[KlyachkoResult]) -> KlyachkoResult:
    return KlyachkoResult.admits(
        sum(result.r for result in results),
        [label for result in results for label in result.pairs],
    )


def klyachko_product(factors: Iterable[Tuple[CuspidalLine, KlyachkoResult]]) -> KlyachkoResult:
    """Combine factor results.

    Admitted factors always combine by summing types (hereditary property).
    Across pairwise distinct lines a factor without a model forces the product
    to have none. Within one line nothing is known beyond heredity, so a missing
    model there gives ``UNKNOWN``.
    """
    groups: Dict[CuspidalLine, List[KlyachkoResult]] = defaultdict(list)
    for line, result in factors:
        groups[line].append(result)

    per_line: List[KlyachkoResult] = []
    for results in groups.values():
        if all(result.is_admits for result in results):
            per_line.append(_combine_admitted(results))
        elif len(results) == 1:
            per_line.append(results[0])
        else:
            per_line.append(KlyachkoResult.unknown())

    if any(result.tag == KlyachkoTag.NO_MODEL for result in per_line):
        return KlyachkoResult.no_model()
    if any(result.tag == KlyachkoTag.UNKNOWN for result in per_line):
        return KlyachkoResult.unknown()
    return _combine_admitted(per_line)


def klyachko_rep(rep: Rep) -> KlyachkoResult:
    """Classify a product of factors; non-ladder factors are ``UNKNOWN``."""
    pieces = []
    for factor in to_langlands(rep).factors:
        m = factor.multisegment
        result = klyachko_ladder(m) if is_ladder(m) else KlyachkoResult.unknown()
        pieces.append((factor.line, result))
    return klyachko_product(pieces)


def klyachko_unitarizable(rep: Rep) -> KlyachkoResult:
    """Type of a product of Speh factors and complementary pairs; always admitted."""
    pieces = []
    for factor in to_langlands(rep).factors:
        if not is_speh(factor.multisegment):
            raise NotTadicForm(f"factor {factor} is not a Speh representation")
        pieces.append((factor.line, klyachko_ladder(factor.multisegment)))
    return klyachko_product(pieces)
