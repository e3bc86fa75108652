"""Fibers of base change and automorphic induction over rigid targets.

A target on the fixed line of an orbit splits into ``d`` labeled parts, part
``j`` placed on the ``j``-th small line of the same orbit. Every such splitting
is a preimage, and distinct splittings give distinct preimages because the small
lines are pairwise distinct.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import IndivisibleType, InvalidValue, NoKlyachkoModel, NotALadder, WrongLineKind
from .functorial import ExtensionContext
from .klyachko import KlyachkoResult, klyachko_ladder, klyachko_product
from .segments import (
    CuspidalLine,
    Factor,
    FieldSide,
    Multisegment,
    Presentation,
    Rep,
    RoleKind,
    is_generic,
    is_ladder,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiberElement:
    """One preimage: the class of each segment, the resulting parts and their product."""

    assignment: Tuple[int, ...]
    parts: Tuple[Multisegment, ...]
    rep: Rep

    def to_json(self) -> dict:
        return {
            "assignment": list(self.assignment),
            "parts": [str(part) for part in self.parts],
            "rep": str(self.rep),
        }


@dataclass(frozen=True)
class FiberCount:
    fiber_size: int
    d_count: int
    r_target: int
    s: int
    d: int

    @property
    def log_d_ratio(self) -> Optional[float]:
        """``log_d(d_count) / s``; None for an empty target."""
        if self.s == 0 or self.d_count == 0:
            return None
        return math.log(self.d_count, self.d) / self.s

    def to_json(self) -> dict:
        return {
            "fiber_size": self.fiber_size,
            "d_count": self.d_count,
            "r_target": self.r_target,
            "s": self.s,
            "d": self.d,
        }


def _target_line(m: Multisegment, ctx: ExtensionContext, side: FieldSide) -> CuspidalLine:
    line = m.line
    ctx.check_atom(line.atom)
    if line.atom.role.kind != RoleKind.FIXED or line.atom.side != side:
        raise WrongLineKind(
            f"fiber target must lie on a Fixed{side.value} line, got {line}"
        )
    return line


def _check_limit(s: int, d: int, limit: Optional[int]) -> None:
    if limit is not None and d ** s > limit:
        raise InvalidValue(f"fiber enumeration needs {d}^{s} assignments, above the limit {limit}")


def _small_lines(line: CuspidalLine, ctx: ExtensionContext) -> List[CuspidalLine]:
    return [ctx.small_line(line.atom.role.orbit, j, line.offset) for j in range(ctx.d)]


def _enumerate(
    m: Multisegment, ctx: ExtensionContext, side: FieldSide, limit: Optional[int]
) -> Iterator[FiberElement]:
    if not m:
        yield FiberElement((), tuple(Multisegment() for _ in range(ctx.d)), Rep())
        return

    line = _target_line(m, ctx, side)
    s = m.size
    _check_limit(s, ctx.d, limit)
    small_lines = _small_lines(line, ctx)

    seen = set()
    emitted = 0
    for assignment in itertools.product(range(ctx.d), repeat=s):
        buckets: List[List] = [[] for _ in range(ctx.d)]
        for seg, j in zip(m.segments, assignment):
            buckets[j].append((seg.a, seg.b))
        parts = tuple(Multisegment.on_line(small_lines[j], buckets[j]) for j in range(ctx.d))
        if parts in seen:
            continue
        seen.add(parts)
        emitted += 1
        rep = Rep(tuple(Factor(Presentation.L, part) for part in parts))
        yield FiberElement(assignment, parts, rep)
    logger.debug("fiber of %s: %d element(s) from %d assignment(s)", m, emitted, ctx.d ** s)


def enumerate_fiber_bc(
    m: Multisegment, ctx: ExtensionContext, limit: Optional[int] = None
) -> Iterator[FiberElement]:
    """Base-change preimages of ``L(m)`` for ``m`` on the FixedE line of a type I orbit.

    Assignments are visited in lexicographic order; splittings that coincide
    because of repeated segments are yielded once.

    Raises:
        WrongLineKind: if ``m`` does not lie on a FixedE line
        InvalidValue: if ``d**s`` exceeds ``limit``
    """
    return _enumerate(m, ctx, FieldSide.EXTENSION, limit)


def enumerate_fiber_ai(
    m: Multisegment, ctx: ExtensionContext, limit: Optional[int] = None
) -> Iterator[FiberElement]:
    """Automorphic-induction preimages of ``L(m)`` for ``m`` on the FixedF line of a type II orbit."""
    return _enumerate(m, ctx, FieldSide.BASE, limit)


def _element_type(element: FiberElement) -> KlyachkoResult:
    return klyachko_product((part.line, klyachko_ladder(part)) for part in element.parts if part)


def _count(
    m: Multisegment, ctx: ExtensionContext, side: FieldSide, limit: Optional[int]
) -> FiberCount:
    if not is_ladder(m):
        raise NotALadder(f"{m} is not a ladder")
    target = klyachko_ladder(m)
    if not target.is_admits:
        raise NoKlyachkoModel(f"L({m}) has no Klyachko model")
    r_target = target.r
    if side == FieldSide.BASE:
        if r_target % ctx.d:
            raise IndivisibleType(f"Klyachko type {r_target} of L({m}) is not divisible by d={ctx.d}")
        r_target //= ctx.d

    wanted = KlyachkoResult.admits(r_target)
    if not m:
        d_count = sum(1 for element in _enumerate(m, ctx, side, limit) if _element_type(element) == wanted)
        return FiberCount(1, d_count, r_target, 0, ctx.d)

    # segments of a ladder are pairwise distinct, so every assignment is its own preimage
    line = _target_line(m, ctx, side)
    _check_limit(m.size, ctx.d, limit)
    small_lines = _small_lines(line, ctx)
    segments = m.segments
    part_types: Dict[Tuple[int, Tuple[int, ...]], KlyachkoResult] = {}

    def part_type(j: int, indices: Tuple[int, ...]) -> KlyachkoResult:
        key = (j, indices)
        if key not in part_types:
            part = Multisegment.on_line(small_lines[j], [(segments[i].a, segments[i].b) for i in indices])
            part_types[key] = klyachko_ladder(part)
        return part_types[key]

    fiber_size = 0
    d_count = 0
    for assignment in itertools.product(range(ctx.d), repeat=m.size):
        classes: List[List[int]] = [[] for _ in range(ctx.d)]
        for i, j in enumerate(assignment):
            classes[j].append(i)
        result = klyachko_product(
            (small_lines[j], part_type(j, tuple(indices))) for j, indices in enumerate(classes) if indices
        )
        fiber_size += 1
        if result == wanted:
            d_count += 1
    logger.info("fiber of L(%s), d=%d: size %d, d_count %d", m, ctx.d, fiber_size, d_count)
    return FiberCount(fiber_size, d_count, r_target, m.size, ctx.d)


def count_klyachko_fiber_bc(
    m: Multisegment, ctx: ExtensionContext, limit: Optional[int] = None
) -> FiberCount:
    """Count base-change preimages whose Klyachko type equals that of ``L(m)``.

    Raises:
        NotALadder: if ``m`` is not a ladder
        NoKlyachkoModel: if ``L(m)`` itself has no Klyachko model
        WrongLineKind: if ``m`` does not lie on a FixedE line
    """
    return _count(m, ctx, FieldSide.EXTENSION, limit)


def count_klyachko_fiber_ai(
    m: Multisegment, ctx: ExtensionContext, limit: Optional[int] = None
) -> FiberCount:
    """Count induction preimages of type ``r(L(m)) / d``.

    Raises:
        IndivisibleType: if ``d`` does not divide the type of ``L(m)``
    """
    return _count(m, ctx, FieldSide.BASE, limit)


def speh_count_formula(s: int, d: int, seg_degree: int = 1) -> int:
    """Closed form for the fiber count of a Speh target with ``s`` segments.

    The count does not depend on ``seg_degree``; it is only validated.
    """
    if s <= 0 or d <= 0 or seg_degree <= 0:
        raise InvalidValue(f"s, d and seg_degree must be positive, got {s}, {d}, {seg_degree}")
    if s % 2 == 0:
        return d ** (s // 2)
    half = s // 2
    return (half + 1) * d ** (half + 1) - half * d ** half


def fiber_all_generic(m: Multisegment, ctx: ExtensionContext, kind: str = "bc") -> bool:
    """Whether every element of the fiber over ``L(m)`` is generic."""
    enumerate_fiber = enumerate_fiber_bc if kind == "bc" else enumerate_fiber_ai
    return all(
        all(is_generic(part) for part in element.parts)
        for element in enumerate_fiber(m, ctx)
    )
