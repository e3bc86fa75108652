"""Batch sweeps over ladder shapes, recording fiber counts as CSV rows, and random corpora."""

import csv
import hashlib
import itertools
import logging
import random
from dataclasses import astuple, dataclass
from typing import Iterable, Iterator, List, Optional, TextIO, Tuple

from .config import SweepConfig
from .errors import IndivisibleType, NoKlyachkoModel
from .fiber import count_klyachko_fiber_ai, count_klyachko_fiber_bc
from .functorial import ExtensionContext, OrbitDatum, OrbitKind
from .klyachko import klyachko_ladder
from .segments import CuspidalLine, Multisegment, Segment, plain_line

logger = logging.getLogger(__name__)

CSV_HEADER = ("s", "d", "shape_hash", "r", "fiber_size", "d_count", "log_d_ratio")


@dataclass(frozen=True)
class BatchRow:
    s: int
    d: int
    shape_hash: str
    r: int
    fiber_size: int
    d_count: int
    log_d_ratio: Optional[float]


def shape_hash(m: Multisegment) -> str:
    """First 12 hex digits of the SHA-256 of the canonical text."""
    return hashlib.sha256(str(m).encode("utf-8")).hexdigest()[:12]


def ladder_shapes(s: int, max_length: int, max_gap: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Ladders with ``s`` segments, lowest begin 0, in a fixed order.

    Segment lengths range over ``1..max_length`` and the gaps between
    consecutive begins over ``1..max_gap``.
    """
    for lengths in itertools.product(range(1, max_length + 1), repeat=s):
        for gaps in itertools.product(range(1, max_gap + 1), repeat=s - 1):
            begins = [0]
            for gap in gaps:
                begins.append(begins[-1] + gap)
            ends = [a + length - 1 for a, length in zip(begins, lengths)]
            if all(lower < upper for lower, upper in zip(ends, ends[1:])):
                yield tuple(zip(begins, ends))


def sweep_context(sweep: SweepConfig, d: int) -> ExtensionContext:
    kind = OrbitKind.TYPE_I if sweep.kind == "bc" else OrbitKind.TYPE_II
    return ExtensionContext(d, (OrbitDatum(sweep.orbit, sweep.k, kind),))


def run_sweep(sweep: SweepConfig, limit: Optional[int] = None) -> Iterator[BatchRow]:
    count = count_klyachko_fiber_bc if sweep.kind == "bc" else count_klyachko_fiber_ai
    for d in sweep.degrees:
        ctx = sweep_context(sweep, d)
        line = ctx.fixed_line(sweep.orbit)
        for s in sweep.sizes:
            for pairs in ladder_shapes(s, sweep.max_length, sweep.max_gap):
                m = Multisegment.on_line(line, pairs)
                try:
                    result = count(m, ctx, limit)
                except (NoKlyachkoModel, IndivisibleType) as exc:
                    logger.debug("skipping %s: %s", m, exc)
                    continue
                yield BatchRow(
                    s=s,
                    d=d,
                    shape_hash=shape_hash(m),
                    r=klyachko_ladder(m).r,
                    fiber_size=result.fiber_size,
                    d_count=result.d_count,
                    log_d_ratio=result.log_d_ratio,
                )
        logger.info("sweep %s finished d=%d", sweep.kind, d)


def run_batch(sweeps: Iterable[SweepConfig], limit: Optional[int] = None) -> List[BatchRow]:
    rows: List[BatchRow] = []
    for index, sweep in enumerate(sweeps, start=1):
        before = len(rows)
        rows.extend(run_sweep(sweep, limit))
        logger.info("sweep %d: %d row(s)", index, len(rows) - before)
    return rows


def random_multisegment(rng: random.Random, line: CuspidalLine, max_segments: int, max_degree: int) -> Multisegment:
    """A rigid multisegment with at most ``max_segments`` segments and degree at most ``max_degree``."""
    segments: List[Segment] = []
    degree = 0
    for _ in range(rng.randint(1, max_segments)):
        a = rng.randint(-3, 3)
        length = rng.randint(1, 4)
        if degree + length * line.dim_k > max_degree:
            break
        segments.append(Segment(line, a, a + length - 1))
        degree += length * line.dim_k
    return Multisegment(tuple(segments))


def random_corpus(seed: int, count: int, max_segments: int, max_degree: int) -> List[Multisegment]:
    rng = random.Random(seed)
    line = plain_line("rho")
    return [random_multisegment(rng, line, max_segments, max_degree) for _ in range(count)]


def write_csv(rows: Iterable[BatchRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        values = list(astuple(row))
        if row.log_d_ratio is not None:
            values[-1] = f"{row.log_d_ratio:.6f}"
        else:
            values[-1] = ""
        writer.writerow(values)
