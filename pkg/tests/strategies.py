"""Hypothesis strategies for partitions, multisegments and ladders."""

from fractions import Fraction

from hypothesis import strategies as st

from mscalc.partitions import Partition
from mscalc.segments import (
    CuspidalAtom,
    CuspidalLine,
    FieldSide,
    Multisegment,
    OrbitRole,
    Segment,
    plain_line,
)

RHO = plain_line("rho")


def partitions(max_part: int = 6, max_size: int = 6):
    return st.lists(st.integers(1, max_part), max_size=max_size).map(lambda parts: Partition(tuple(parts)))


def segments_on(line: CuspidalLine, low: int = -3, high: int = 3, max_length: int = 4):
    return st.builds(
        lambda a, length: Segment(line, a, a + length - 1),
        st.integers(low, high),
        st.integers(1, max_length),
    )


def rigid_multisegments(line: CuspidalLine = RHO, max_segments: int = 6, max_degree: int = 30, max_length: int = 4):
    return (
        st.lists(segments_on(line, max_length=max_length), max_size=max_segments)
        .map(lambda segs: Multisegment(tuple(segs)))
        .filter(lambda m: m.degree <= max_degree)
    )


@st.composite
def ladders(draw, line: CuspidalLine = RHO, min_segments: int = 1, max_segments: int = 6):
    """Strictly increasing begins and ends, listed from the bottom."""
    s = draw(st.integers(min_segments, max_segments))
    a = draw(st.integers(-2, 2))
    b = a + draw(st.integers(0, 2))
    pairs = [(a, b)]
    for _ in range(s - 1):
        a = a + draw(st.integers(1, 3))
        b = max(b + draw(st.integers(1, 3)), a)
        pairs.append((a, b))
    return Multisegment.on_line(line, pairs)


def speh_multisegment(line: CuspidalLine, s: int, length: int) -> Multisegment:
    return Multisegment.on_line(line, [(i, i + length - 1) for i in range(s)])


OFFSETS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(2, 3)]


@st.composite
def lines(draw):
    """Plain and annotated lines with assorted dimensions and offsets."""
    name = draw(st.sampled_from(["rho", "sigma", "tau_1"]))
    k = draw(st.integers(1, 3))
    offset = draw(st.sampled_from(OFFSETS))
    role = draw(st.sampled_from(["plain", "small", "fixed"]))
    side = draw(st.sampled_from([FieldSide.BASE, FieldSide.EXTENSION]))
    if role == "plain":
        return CuspidalLine(CuspidalAtom(name, k), offset)
    if role == "small":
        return CuspidalLine(CuspidalAtom(name, k, side, OrbitRole.small(name, draw(st.integers(0, 4)))), offset)
    return CuspidalLine(CuspidalAtom(name, k, side, OrbitRole.fixed(name)), offset)


@st.composite
def multisegments(draw, max_lines: int = 3):
    """Possibly non-rigid multisegments over a few random lines."""
    chosen = draw(st.lists(lines(), min_size=0, max_size=max_lines))
    segs = []
    for line in chosen:
        segs.extend(draw(st.lists(segments_on(line), min_size=1, max_size=4)))
    return Multisegment(tuple(segs))
