"""Symbolic base change and automorphic induction for a prime cyclic extension.

Cuspidal atoms taking part in the transfer are declared through orbits. A
type I orbit has ``d`` base-field atoms ``SmallF(j)`` that all base change to one
extension-field atom ``FixedE``. A type II orbit has ``d`` extension-field atoms
``SmallE(j)`` that all induce to one base-field atom ``FixedF`` of dimension
``k*d``. Twisting by the character kappa (or by the Galois generator) cycles the
index ``j``.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Set, Tuple

from .errors import ContextError, NotFactorwise, UnregisteredAtom, WrongLineKind
from .segments import (
    CuspidalAtom,
    CuspidalLine,
    Factor,
    FieldSide,
    OrbitRole,
    Rep,
    RoleKind,
    relocate,
)

logger = logging.getLogger(__name__)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n ** 0.5) + 1))


class OrbitKind(Enum):
    TYPE_I = "I"
    TYPE_II = "II"


@dataclass(frozen=True)
class OrbitDatum:
    """A declared orbit of cuspidal atoms."""

    name: str
    k: int
    kind: OrbitKind

    def __post_init__(self):
        if not self.name:
            raise ContextError("orbit name must be non-empty")
        if self.k <= 0:
            raise ContextError(f"orbit {self.name}: k must be positive, got {self.k}")

    @property
    def small_side(self) -> FieldSide:
        return FieldSide.BASE if self.kind == OrbitKind.TYPE_I else FieldSide.EXTENSION

    @property
    def fixed_side(self) -> FieldSide:
        return FieldSide.EXTENSION if self.kind == OrbitKind.TYPE_I else FieldSide.BASE

    def fixed_dim(self, d: int) -> int:
        return self.k if self.kind == OrbitKind.TYPE_I else self.k * d


@dataclass(frozen=True)
class ExtensionContext:
    """Degree ``d`` of the extension plus the registry of orbits."""

    d: int
    orbits: Tuple[OrbitDatum, ...] = ()

    def __post_init__(self):
        if not is_prime(self.d):
            raise ContextError(f"extension degree must be prime, got {self.d}")
        names = [orbit.name for orbit in self.orbits]
        if len(names) != len(set(names)):
            raise ContextError(f"orbit names must be unique, got {names}")

    def orbit(self, name: str) -> OrbitDatum:
        for orbit in self.orbits:
            if orbit.name == name:
                return orbit
        raise UnregisteredAtom(f"orbit {name!r} is not registered")

    def small_atom(self, name: str, index: int) -> CuspidalAtom:
        orbit = self.orbit(name)
        return CuspidalAtom(name, orbit.k, orbit.small_side, OrbitRole.small(name, index % self.d))

    def fixed_atom(self, name: str) -> CuspidalAtom:
        orbit = self.orbit(name)
        return CuspidalAtom(name, orbit.fixed_dim(self.d), orbit.fixed_side, OrbitRole.fixed(name))

    def small_line(self, name: str, index: int, offset=0) -> CuspidalLine:
        return CuspidalLine(self.small_atom(name, index), offset)

    def fixed_line(self, name: str, offset=0) -> CuspidalLine:
        return CuspidalLine(self.fixed_atom(name), offset)

    def check_atom(self, atom: CuspidalAtom) -> OrbitDatum:
        """The orbit an atom belongs to, after checking side, dimension and index."""
        if atom.role.kind == RoleKind.PLAIN:
            raise UnregisteredAtom(f"atom {atom.name!r} has no declared orbit")
        orbit = self.orbit(atom.role.orbit)
        if atom.role.kind == RoleKind.SMALL:
            expected = self.small_atom(orbit.name, atom.role.index)
            if atom.role.index >= self.d:
                raise UnregisteredAtom(f"orbit index {atom.role.index} out of range for d={self.d}")
        else:
            expected = self.fixed_atom(orbit.name)
        if atom != expected:
            raise UnregisteredAtom(
                f"atom {atom.role_label} of orbit {orbit.name!r} does not match its declaration "
                f"(expected k={expected.dim_k} over {expected.side.value})"
            )
        return orbit


def _twist(rep: Rep, j: int, ctx: ExtensionContext, side: FieldSide) -> Rep:
    factors = []
    for factor in rep.factors:
        atom = factor.line.atom
        ctx.check_atom(atom)
        if atom.side != side:
            raise WrongLineKind(f"factor {factor} is not over the {side.name.lower()} field")
        if atom.role.kind == RoleKind.SMALL:
            line = factor.line.with_atom(ctx.small_atom(atom.role.orbit, atom.role.index + j))
            factors.append(Factor(factor.presentation, relocate(factor.multisegment, line)))
        else:
            factors.append(factor)
    return Rep(tuple(factors), rep.assert_irreducible)


def kappa_twist(rep: Rep, j: int, ctx: ExtensionContext) -> Rep:
    """Multiply a base-field representation by ``kappa^j``."""
    return _twist(rep, j, ctx, FieldSide.BASE)


def galois_twist(rep: Rep, j: int, ctx: ExtensionContext) -> Rep:
    """Apply the ``j``-th power of the Galois generator to an extension-field representation."""
    return _twist(rep, j, ctx, FieldSide.EXTENSION)


def _images(line: CuspidalLine, ctx: ExtensionContext) -> List[CuspidalLine]:
    """Lines a factor on ``line`` is sent to: one for small atoms, ``d`` for fixed ones."""
    atom = line.atom
    if atom.role.kind == RoleKind.SMALL:
        return [CuspidalLine(ctx.fixed_atom(atom.role.orbit), line.offset)]
    return [CuspidalLine(ctx.small_atom(atom.role.orbit, j), line.offset) for j in range(ctx.d)]


def _transfer(rep: Rep, ctx: ExtensionContext, source: FieldSide) -> Rep:
    factors: List[Factor] = []
    sources: Dict[CuspidalLine, Set[CuspidalLine]] = defaultdict(set)
    for factor in rep.factors:
        atom = factor.line.atom
        ctx.check_atom(atom)
        if atom.side != source:
            raise WrongLineKind(f"factor {factor} is not over the {source.name.lower()} field")
        for image in _images(factor.line, ctx):
            sources[image].add(factor.line)
            factors.append(Factor(factor.presentation, relocate(factor.multisegment, image)))

    clashes = [str(image) for image, origin in sources.items() if len(origin) > 1]
    if clashes:
        raise NotFactorwise(
            f"factors on different lines map onto {', '.join(clashes)}; "
            "the image is not a product of the factor images"
        )
    result = Rep(tuple(factors), rep.assert_irreducible)
    logger.debug("transfer of %s over %s: %s", rep, source.value, result)
    return result


def bc(rep: Rep, ctx: ExtensionContext) -> Rep:
    """Base change of a base-field representation, factor by factor."""
    return _transfer(rep, ctx, FieldSide.BASE)


def ai(rep: Rep, ctx: ExtensionContext) -> Rep:
    """Automorphic induction of an extension-field representation, factor by factor."""
    return _transfer(rep, ctx, FieldSide.EXTENSION)
