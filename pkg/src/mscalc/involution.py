"""The Zelevinsky involution via the Moeglin-Waldspurger recursion."""

import logging
from collections import Counter
from typing import List, Optional

from .segments import Factor, Multisegment, Presentation, Rep, Segment, shorten

logger = logging.getLogger(__name__)


def _next_in_chain(pool: Counter, current: Segment) -> Optional[Segment]:
    """Segment with end one less than ``current`` that precedes it, maximal begin."""
    candidates = [
        seg for seg, count in pool.items()
        if count and seg.b == current.b - 1 and seg.a < current.a
    ]
    return max(candidates, key=lambda seg: seg.a, default=None)


def _mw_dual_rigid(m: Multisegment) -> List[Segment]:
    pool = Counter(m.segments)
    dual: List[Segment] = []
    while +pool:
        pool = +pool
        end = max(seg.b for seg in pool)
        head = max((seg for seg in pool if seg.b == end), key=lambda seg: seg.a)
        chain = [head]
        pool[head] -= 1
        while (nxt := _next_in_chain(pool, chain[-1])) is not None:
            chain.append(nxt)
            pool[nxt] -= 1
        dual.append(Segment(head.line, end - len(chain) + 1, end))
        logger.debug("MW chain %s -> [%d,%d]", [str(seg) for seg in chain], end - len(chain) + 1, end)
        for seg in chain:
            rest = shorten(seg)
            if rest is not None:
                pool[rest] += 1
    return dual


def mw_dual(m: Multisegment) -> Multisegment:
    """The multisegment ``m^t`` with ``L(m^t) = Z(m)``, computed line by line."""
    dual: List[Segment] = []
    for part in m.by_line().values():
        dual.extend(_mw_dual_rigid(part))
    return Multisegment(tuple(dual))


def to_langlands(rep: Rep) -> Rep:
    """Rewrite every ``Z(m)`` factor as ``L(m^t)``; the representation is unchanged."""
    factors = tuple(
        factor if factor.presentation == Presentation.L
        else Factor(Presentation.L, mw_dual(factor.multisegment))
        for factor in rep.factors
    )
    return Rep(factors, rep.assert_irreducible)


def dual_presentation(rep: Rep, normalize: bool = False) -> Rep:
    """The involution ``pi -> pi^t``.

    By default the presentation flag of each factor is swapped and the
    multisegment kept. With ``normalize`` the multisegment is dualised as well,
    ``L(m) -> Z(m^t)`` and ``Z(m) -> L(m^t)``, which writes each factor in the
    other presentation.
    """
    return Rep(
        tuple(
            Factor(f.presentation.swapped(), mw_dual(f.multisegment) if normalize else f.multisegment)
            for f in rep.factors
        ),
        rep.assert_irreducible,
    )
