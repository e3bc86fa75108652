"""Cuspidal atoms, lines, segments, multisegments and representations.

A segment ``[a,b]`` lives on a cuspidal line: the integer unramified twists of a
cuspidal atom, shifted by a rational offset in ``[0, 1)``. A multisegment is a
multiset of segments, stored in a canonical order so that equality of the
dataclass is equality of multisets. ``Rep`` is an irreducible representation
given as a product of ``L(m)`` / ``Z(m)`` factors with rigid ``m``.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .errors import InvalidValue, NotALadder, NotRigid, NotTadicForm, ReducibleProduct

logger = logging.getLogger(__name__)


class FieldSide(Enum):
    """Which field a cuspidal atom lives over."""

    BASE = "F"
    EXTENSION = "E"


class RoleKind(Enum):
    """How an atom behaves under base change and automorphic induction."""

    PLAIN = "plain"
    SMALL = "small"     # member of a d-element orbit, indexed mod d
    FIXED = "fixed"     # the single atom the orbit collapses to on the other side


@dataclass(frozen=True)
class OrbitRole:
    kind: RoleKind = RoleKind.PLAIN
    orbit: Optional[str] = None
    index: Optional[int] = None

    def __post_init__(self):
        if self.kind == RoleKind.PLAIN and (self.orbit is not None or self.index is not None):
            raise InvalidValue("a plain atom carries no orbit data")
        if self.kind != RoleKind.PLAIN and not self.orbit:
            raise InvalidValue("orbit members need an orbit name")
        if self.kind == RoleKind.SMALL and (self.index is None or self.index < 0):
            raise InvalidValue(f"small orbit member needs a non-negative index, got {self.index}")
        if self.kind == RoleKind.FIXED and self.index is not None:
            raise InvalidValue("fixed orbit atoms carry no index")

    @classmethod
    def plain(cls) -> "OrbitRole":
        return cls()

    @classmethod
    def small(cls, orbit: str, index: int) -> "OrbitRole":
        return cls(RoleKind.SMALL, orbit, index)

    @classmethod
    def fixed(cls, orbit: str) -> "OrbitRole":
        return cls(RoleKind.FIXED, orbit)

    def sort_key(self) -> tuple:
        return (self.kind.value, self.orbit or "", -1 if self.index is None else self.index)


@dataclass(frozen=True)
class CuspidalAtom:
    """A symbolic cuspidal representation of GL_k over one of the two fields."""

    name: str
    dim_k: int = 1
    side: FieldSide = FieldSide.BASE
    role: OrbitRole = field(default_factory=OrbitRole.plain)

    def __post_init__(self):
        if not self.name:
            raise InvalidValue("atom name must be non-empty")
        if self.dim_k <= 0:
            raise InvalidValue(f"atom dimension must be positive, got {self.dim_k}")

    @property
    def role_label(self) -> Optional[str]:
        """``SmallF(j)``, ``FixedE`` and so on; None for plain atoms."""
        suffix = self.side.value
        if self.role.kind == RoleKind.SMALL:
            return f"Small{suffix}({self.role.index})"
        if self.role.kind == RoleKind.FIXED:
            return f"Fixed{suffix}"
        return None

    def sort_key(self) -> tuple:
        return (self.name, self.side.value, self.role.sort_key(), self.dim_k)


@dataclass(frozen=True)
class CuspidalLine:
    """The line of integer twists of ``nu^offset * atom``."""

    atom: CuspidalAtom
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        offset = Fraction(self.offset)
        if not 0 <= offset < 1:
            raise InvalidValue(f"line offset must lie in [0,1), got {offset}")
        object.__setattr__(self, "offset", offset)

    @property
    def dim_k(self) -> int:
        return self.atom.dim_k

    def with_atom(self, atom: CuspidalAtom) -> "CuspidalLine":
        return CuspidalLine(atom, self.offset)

    def sort_key(self) -> tuple:
        return self.atom.sort_key() + (self.offset,)

    def __str__(self) -> str:
        name = self.atom.name
        if self.atom.role_label:
            name = f"{name}#{self.atom.role_label}"
        args = f"k={self.atom.dim_k}"
        if self.offset:
            args += f",off={self.offset.numerator}/{self.offset.denominator}"
        return f"{name}({args})"


def plain_line(name: str, dim_k: int = 1, offset: Fraction = Fraction(0)) -> CuspidalLine:
    return CuspidalLine(CuspidalAtom(name, dim_k), Fraction(offset))


@dataclass(frozen=True)
class Segment:
    """The twists ``nu^a sigma, ..., nu^b sigma``; never empty."""

    line: CuspidalLine
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise InvalidValue(f"segment [{self.a},{self.b}] is empty; empty segments are not stored")

    @property
    def length(self) -> int:
        return self.b - self.a + 1

    @property
    def degree(self) -> int:
        return self.length * self.line.dim_k

    def exponents(self) -> range:
        return range(self.a, self.b + 1)

    def contains(self, other: "Segment") -> bool:
        return self.line == other.line and self.a <= other.a and other.b <= self.b

    def shifted(self, n: int) -> "Segment":
        return Segment(self.line, self.a + n, self.b + n)

    def on(self, line: CuspidalLine) -> "Segment":
        return Segment(line, self.a, self.b)

    def standard_key(self) -> tuple:
        # sorted ascending this gives end descending, then begin descending
        return (-self.b, -self.a, self.line.sort_key())

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]"


def shorten(seg: Segment) -> Optional[Segment]:
    """Drop the end of ``seg``; None when nothing is left."""
    if seg.a == seg.b:
        return None
    return Segment(seg.line, seg.a, seg.b - 1)


@dataclass(frozen=True)
class Multisegment:
    """A finite multiset of segments."""

    segments: tuple[Segment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(sorted(self.segments, key=Segment.standard_key)))

    @classmethod
    def on_line(cls, line: CuspidalLine, pairs: Iterable[Tuple[int, int]]) -> "Multisegment":
        return cls(tuple(Segment(line, a, b) for a, b in pairs))

    @property
    def size(self) -> int:
        return len(self.segments)

    @property
    def degree(self) -> int:
        return sum(seg.degree for seg in self.segments)

    def lines(self) -> List[CuspidalLine]:
        seen: Dict[CuspidalLine, None] = {}
        for seg in self.segments:
            seen.setdefault(seg.line, None)
        return sorted(seen, key=CuspidalLine.sort_key)

    @property
    def line(self) -> CuspidalLine:
        """The unique line of a rigid, non-empty multisegment."""
        lines = self.lines()
        if len(lines) != 1:
            raise NotRigid(f"multisegment {self} does not lie on a single line")
        return lines[0]

    def by_line(self) -> Dict[CuspidalLine, "Multisegment"]:
        groups: Dict[CuspidalLine, List[Segment]] = defaultdict(list)
        for seg in self.segments:
            groups[seg.line].append(seg)
        return {line: Multisegment(tuple(segs)) for line, segs in groups.items()}

    def pairs(self) -> List[Tuple[int, int]]:
        return [(seg.a, seg.b) for seg in self.segments]

    def __add__(self, other: "Multisegment") -> "Multisegment":
        return Multisegment(self.segments + other.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __bool__(self) -> bool:
        return bool(self.segments)

    def twist(self, alpha: Fraction) -> "Multisegment":
        """Multiply by ``nu^alpha``: integer part shifts, fractional part moves the line."""
        twisted = []
        for seg in self.segments:
            total = seg.line.offset + Fraction(alpha)
            shift = math.floor(total)
            line = CuspidalLine(seg.line.atom, total - shift)
            twisted.append(Segment(line, seg.a + shift, seg.b + shift))
        return Multisegment(tuple(twisted))

    def __str__(self) -> str:
        if not self.segments:
            return "{}"
        groups = self.by_line()
        rendered = []
        for line in sorted(groups, key=CuspidalLine.sort_key):
            body = ",".join(str(seg) for seg in groups[line].segments)
            rendered.append(f"{{{body}}}@{line}")
        return " + ".join(rendered)


def linked(d1: Segment, d2: Segment) -> bool:
    """Same line, neither contains the other, and the union is a segment."""
    if d1.line != d2.line:
        return False
    if d1.contains(d2) or d2.contains(d1):
        return False
    # union is an interval iff the ranges overlap or touch
    return max(d1.a, d2.a) <= min(d1.b, d2.b) + 1


def precedes(d1: Segment, d2: Segment) -> bool:
    return linked(d1, d2) and d1.a < d2.a


def standard_order(m: Multisegment) -> List[Segment]:
    """An order in which no earlier segment precedes a later one."""
    return sorted(m.segments, key=Segment.standard_key)


def is_standard_order(order: List[Segment]) -> bool:
    return not any(precedes(order[i], order[j]) for i in range(len(order)) for j in range(i + 1, len(order)))


def is_rigid(m: Multisegment) -> bool:
    return len(m.lines()) <= 1


def support(m: Multisegment) -> Dict[CuspidalLine, Set[int]]:
    """Exponents touched on each line, as sets."""
    result: Dict[CuspidalLine, Set[int]] = defaultdict(set)
    for seg in m.segments:
        result[seg.line].update(seg.exponents())
    return dict(result)


def ladder_order(m: Multisegment) -> List[Segment]:
    """Segments sorted by descending begin (ties by descending end)."""
    return sorted(m.segments, key=lambda seg: (-seg.a, -seg.b))


def is_ladder(m: Multisegment) -> bool:
    if not is_rigid(m):
        return False
    order = ladder_order(m)
    return all(upper.a > lower.a and upper.b > lower.b for upper, lower in zip(order, order[1:]))


def _proper_step(upper: Segment, lower: Segment) -> bool:
    return upper.a <= lower.b + 1


def is_proper_ladder(m: Multisegment) -> bool:
    if not is_ladder(m):
        return False
    order = ladder_order(m)
    return all(_proper_step(upper, lower) for upper, lower in zip(order, order[1:]))


def is_speh(m: Multisegment) -> bool:
    if not is_ladder(m):
        return False
    order = ladder_order(m)
    return all(upper.a == lower.a + 1 and upper.b == lower.b + 1 for upper, lower in zip(order, order[1:]))


def proper_decomposition(m: Multisegment) -> List[Multisegment]:
    """Split a ladder into maximal proper runs of the descending-begin order."""
    if not is_ladder(m):
        raise NotALadder(f"{m} is not a ladder")
    order = ladder_order(m)
    runs: List[List[Segment]] = []
    for seg in order:
        if runs and _proper_step(runs[-1][-1], seg):
            runs[-1].append(seg)
        else:
            runs.append([seg])
    logger.debug("proper decomposition of %s: %d run(s)", m, len(runs))
    return [Multisegment(tuple(run)) for run in runs]


def is_generic(m: Multisegment) -> bool:
    """No two segments are linked."""
    segs = m.segments
    return not any(linked(segs[i], segs[j]) for i in range(len(segs)) for j in range(i + 1, len(segs)))


def relocate(m: Multisegment, newline: CuspidalLine) -> Multisegment:
    """Same ``[a,b]`` data on another line."""
    if not is_rigid(m):
        raise NotRigid(f"cannot relocate non-rigid multisegment {m}")
    return Multisegment(tuple(seg.on(newline) for seg in m.segments))


def speh(line: CuspidalLine, a: int, b: int, t: int) -> Multisegment:
    """The Speh multisegment with ``t`` segments and top segment ``[a,b]``."""
    if t <= 0:
        raise InvalidValue(f"a Speh multisegment needs at least one segment, got t={t}")
    return Multisegment(tuple(Segment(line, a - i, b - i) for i in range(t)))


class Presentation(Enum):
    """Langlands (L) or Zelevinsky (Z) classification."""

    L = "L"
    Z = "Z"

    def swapped(self) -> "Presentation":
        return Presentation.Z if self == Presentation.L else Presentation.L


@dataclass(frozen=True)
class Factor:
    presentation: Presentation
    multisegment: Multisegment

    @property
    def line(self) -> CuspidalLine:
        return self.multisegment.line

    @property
    def degree(self) -> int:
        return self.multisegment.degree

    def sort_key(self) -> tuple:
        return (
            self.line.sort_key(),
            self.presentation.value,
            tuple(seg.standard_key() for seg in self.multisegment.segments),
        )

    def __str__(self) -> str:
        return f"{self.presentation.value}{self.multisegment}"


@dataclass(frozen=True)
class Rep:
    """An irreducible representation as a product of rigid factors.

    Factors on pairwise distinct lines always give an irreducible product.
    Same-line factors need ``assert_irreducible=True``.
    """

    factors: tuple[Factor, ...] = ()
    assert_irreducible: bool = field(default=False, compare=False)

    def __post_init__(self):
        kept = []
        for factor in self.factors:
            if not factor.multisegment:
                continue
            if not is_rigid(factor.multisegment):
                raise NotRigid(f"factor {factor} is not rigid")
            kept.append(factor)
        kept.sort(key=Factor.sort_key)
        lines = [factor.line for factor in kept]
        if len(set(lines)) != len(lines) and not self.assert_irreducible:
            raise ReducibleProduct(
                "factors share a cuspidal line; pass assert_irreducible=True to accept the product"
            )
        object.__setattr__(self, "factors", tuple(kept))

    @classmethod
    def of(cls, presentation: Presentation, m: Multisegment, assert_irreducible: bool = False) -> "Rep":
        """``L(m)`` or ``Z(m)``, split into one factor per line."""
        factors = tuple(Factor(presentation, part) for part in m.by_line().values())
        return cls(factors, assert_irreducible)

    @classmethod
    def langlands(cls, m: Multisegment) -> "Rep":
        return cls.of(Presentation.L, m)

    @classmethod
    def zelevinsky(cls, m: Multisegment) -> "Rep":
        return cls.of(Presentation.Z, m)

    @property
    def degree(self) -> int:
        return sum(factor.degree for factor in self.factors)

    def lines(self) -> List[CuspidalLine]:
        return [factor.line for factor in self.factors]

    def is_rigid(self) -> bool:
        return len(set(self.lines())) <= 1

    def __mul__(self, other: "Rep") -> "Rep":
        return Rep(self.factors + other.factors, self.assert_irreducible or other.assert_irreducible)

    def __bool__(self) -> bool:
        return bool(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(str(factor) for factor in self.factors)


def speh_rep(m: Multisegment) -> Rep:
    """``L(m)`` for a Speh multisegment."""
    if not m or not is_speh(m):
        raise NotTadicForm(f"{m} is not a Speh multisegment")
    return Rep.langlands(m)


def complementary_pair(tau: Multisegment, alpha: Fraction) -> Rep:
    """``nu^alpha tau x nu^-alpha tau`` for a Speh ``tau`` and ``alpha`` in (-1/2, 1/2)."""
    alpha = Fraction(alpha)
    if not tau or not is_speh(tau):
        raise NotTadicForm(f"{tau} is not a Speh multisegment")
    if not Fraction(-1, 2) < alpha < Fraction(1, 2):
        raise NotTadicForm(f"complementary exponent {alpha} outside (-1/2, 1/2)")
    return Rep(
        (Factor(Presentation.L, tau.twist(alpha)), Factor(Presentation.L, tau.twist(-alpha))),
        assert_irreducible=(alpha == 0),
    )


def tadic_product(*reps: Rep) -> Rep:
    """Product of unitarizable pieces; irreducible by Tadić's theorem."""
    factors: Tuple[Factor, ...] = ()
    for rep in reps:
        factors += rep.factors
    return Rep(factors, assert_irreducible=True)


def is_ladder_product(rep: Rep) -> bool:
    """Every factor, written in Langlands form, is a ladder."""
    from .involution import to_langlands

    return all(is_ladder(factor.multisegment) for factor in to_langlands(rep).factors)
