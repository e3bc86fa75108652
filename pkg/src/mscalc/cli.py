"""Command-line front end: one verb per library operation."""

import argparse
import io
import logging
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.logging import RichHandler

from . import __version__
from .batch import random_corpus, run_batch, write_csv
from .config import Config, load_context, load_sweeps
from .errors import ContextError, InvalidValue, MscalcError, NotRigid
from .fiber import (
    count_klyachko_fiber_ai,
    count_klyachko_fiber_bc,
    enumerate_fiber_ai,
    enumerate_fiber_bc,
)
from .functorial import ExtensionContext, OrbitDatum, OrbitKind, ai, bc, galois_twist, kappa_twist
from .involution import dual_presentation, mw_dual, to_langlands
from .klyachko import klyachko_rep
from .models import depth_sequence, sl2_type, whittaker_positions
from .parser import parse_multisegment, parse_rep
from .report import Report, error_console
from .segments import (
    FieldSide,
    Multisegment,
    Presentation,
    Rep,
    RoleKind,
    is_generic,
    is_ladder_product,
    is_proper_ladder,
    is_speh,
    proper_decomposition,
    relocate,
)
from .weil_deligne import induced_block, jordan_partition, nilpotent_of

logger = logging.getLogger(__name__)

EPILOG = """
Expressions:
  {[2,3],[1,2]}@rho(k=1)              L of a multisegment on the line of rho
  {[0,1]}@rho(k=2,off=1/4)            a line with a rational offset
  Z{[0,0]}@a(k=1) * L{[1,1]}@b(k=1)   a product over distinct lines
  L{[0,1]}@s#SmallF(0)(k=1)           a member of a declared orbit

Context file (--context):
  degree 2
  orbit s kind=I k=1
  orbit t kind=II k=1

Without --context, bc/ai/twist/fiber build a context of degree --d from the
orbit annotations of the expression.

Errors are reported as 'error[<code>]: <message>' with exit status 2.
"""


@dataclass
class Session:
    """Settings shared by every verb of one invocation."""

    config: Config
    as_json: bool
    context_path: Optional[Path]
    d: Optional[int]
    seed: Optional[int]
    out: Optional[Path]
    assert_irreducible: bool

    @property
    def degree(self) -> int:
        return self.d if self.d is not None else self.config.fiber.default_degree

    def context(self) -> Optional[ExtensionContext]:
        if self.context_path is None:
            return None
        return load_context(self.context_path, default_degree=self.d)


def _is_bare(text: str) -> bool:
    return text.lstrip().startswith("{")


def read_rep(text: str, session: Session) -> Rep:
    """A bare multisegment means its Langlands representation."""
    ctx = session.context()
    if _is_bare(text):
        return Rep.of(Presentation.L, parse_multisegment(text, ctx), session.assert_irreducible)
    return parse_rep(text, ctx, session.assert_irreducible)


def _orbit_for(atom, d: int) -> OrbitDatum:
    small = atom.role.kind == RoleKind.SMALL
    type_one = (small and atom.side == FieldSide.BASE) or (not small and atom.side == FieldSide.EXTENSION)
    kind = OrbitKind.TYPE_I if type_one else OrbitKind.TYPE_II
    k = atom.dim_k
    if kind == OrbitKind.TYPE_II and not small:
        if k % d:
            raise ContextError(f"FixedF dimension {k} of {atom.name!r} is not divisible by d={d}")
        k //= d
    return OrbitDatum(atom.role.orbit, k, kind)


def infer_context(rep: Rep, d: int) -> ExtensionContext:
    """A context of degree ``d`` declaring the orbits annotated in ``rep``."""
    orbits: Dict[str, OrbitDatum] = {}
    for line in rep.lines():
        if line.atom.role.kind == RoleKind.PLAIN:
            continue
        datum = _orbit_for(line.atom, d)
        if orbits.setdefault(datum.name, datum) != datum:
            raise ContextError(f"conflicting annotations for orbit {datum.name!r}")
    return ExtensionContext(d, tuple(orbits.values()))


def transfer_context(rep: Rep, session: Session) -> ExtensionContext:
    return session.context() or infer_context(rep, session.degree)


def cmd_dual(args, session: Session) -> Report:
    if _is_bare(args.expression) and not args.normalize:
        m = parse_multisegment(args.expression, session.context())
        dual = mw_dual(m)
        return Report([str(dual)], {"verb": "dual", "input": str(m), "dual": str(dual)})
    rep = read_rep(args.expression, session)
    dual = dual_presentation(rep, normalize=args.normalize)
    return Report([str(dual)], {"verb": "dual", "input": str(rep), "dual": str(dual)})


def cmd_sl2(args, session: Session) -> Report:
    partition = sl2_type(read_rep(args.expression, session))
    return Report([str(partition)], {"verb": "sl2", "sl2_type": partition.to_json()})


def cmd_depth(args, session: Session) -> Report:
    depth = depth_sequence(read_rep(args.expression, session))
    return Report([str(depth)], {"verb": "depth", "depth": depth.to_json()})


def cmd_whittaker(args, session: Session) -> Report:
    rep = read_rep(args.expression, session)
    depth = depth_sequence(rep)
    positions = sorted(whittaker_positions(depth, rep.degree))
    return Report(
        [" ".join(str(i) for i in positions) or "(none)"],
        {"verb": "whittaker-positions", "n": rep.degree, "depth": depth.to_json(), "positions": positions},
    )


def cmd_klyachko(args, session: Session) -> Report:
    result = klyachko_rep(read_rep(args.expression, session))
    return Report([str(result)], {"verb": "klyachko", "klyachko": result.to_json()})


def cmd_is_ladder(args, session: Session) -> Report:
    rep = read_rep(args.expression, session)
    pieces = [factor.multisegment for factor in to_langlands(rep).factors]
    flags = {
        "ladder": is_ladder_product(rep),
        "proper": all(is_proper_ladder(m) for m in pieces),
        "speh": all(is_speh(m) for m in pieces),
        "generic": all(is_generic(m) for m in pieces),
    }
    lines = [f"{name}: {'yes' if value else 'no'}" for name, value in flags.items()]
    return Report(lines, {"verb": "is-ladder", **flags})


def cmd_decompose(args, session: Session) -> Report:
    rep = read_rep(args.expression, session)
    parts: List[Multisegment] = []
    for factor in to_langlands(rep).factors:
        parts.extend(proper_decomposition(factor.multisegment))
    rendered = [str(part) for part in parts]
    return Report(rendered, {"verb": "decompose", "parts": rendered})


def _transfer(verb: str, operation: Callable) -> Callable:
    def command(args, session: Session) -> Report:
        rep = read_rep(args.expression, session)
        result = operation(rep, transfer_context(rep, session))
        return Report([str(result)], {"verb": verb, "input": str(rep), "result": str(result)})

    return command


def cmd_twist(args, session: Session) -> Report:
    rep = read_rep(args.expression, session)
    ctx = transfer_context(rep, session)
    over_base = all(line.atom.side == FieldSide.BASE for line in rep.lines())
    result = (kappa_twist if over_base else galois_twist)(rep, args.by, ctx)
    return Report([str(result)], {"verb": "twist", "by": args.by, "result": str(result)})


def fiber_target(text: str, session: Session, kind: str) -> Tuple[Multisegment, ExtensionContext]:
    """The rigid target and its context; a plain line is read as the fixed line of a new orbit."""
    rep = to_langlands(read_rep(text, session))
    if len(rep.factors) > 1:
        raise NotRigid(f"fiber target {rep} is not rigid")
    m = rep.factors[0].multisegment if rep.factors else Multisegment()
    ctx = session.context()
    if ctx is not None:
        return m, ctx
    if not m:
        return m, ExtensionContext(session.degree)
    line = m.line
    if line.atom.role.kind != RoleKind.PLAIN:
        return m, infer_context(rep, session.degree)

    d = session.degree
    orbit_kind = OrbitKind.TYPE_I if kind == "bc" else OrbitKind.TYPE_II
    k = line.dim_k
    if orbit_kind == OrbitKind.TYPE_II:
        if k % d:
            raise ContextError(f"target dimension k={k} is not divisible by d={d}")
        k //= d
    ctx = ExtensionContext(d, (OrbitDatum(line.atom.name, k, orbit_kind),))
    return relocate(m, ctx.fixed_line(line.atom.name, line.offset)), ctx


def cmd_fiber(args, session: Session) -> Report:
    m, ctx = fiber_target(args.expression, session, args.kind)
    limit = session.config.fiber.max_assignments
    emit = args.emit_elements or session.config.fiber.emit_elements
    data: dict = {"verb": "fiber", "kind": args.kind, "d": ctx.d, "target": str(m)}
    lines: List[str] = []

    if args.count_klyachko:
        count = (count_klyachko_fiber_bc if args.kind == "bc" else count_klyachko_fiber_ai)(m, ctx, limit)
        data.update(count.to_json())
        lines += [f"fiber_size={count.fiber_size}", f"d_count={count.d_count}", f"r_target={count.r_target}"]

    report = Report(lines, data)
    if emit or not args.count_klyachko:
        enumerate_fiber = enumerate_fiber_bc if args.kind == "bc" else enumerate_fiber_ai
        elements = list(enumerate_fiber(m, ctx, limit))
        data["fiber_size"] = len(elements)
        if not args.count_klyachko:
            lines.append(f"fiber_size={len(elements)}")
        if emit:
            data["elements"] = [element.to_json() for element in elements]
            report.title = f"fiber of L({m})"
            report.columns = ("assignment", "preimage")
            report.rows = [
                ("".join(str(j) for j in element.assignment), str(element.rep)) for element in elements
            ]
    return report


def _scalars(text: str) -> List[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InvalidValue(f"cannot read scalars {text!r}; expected e.g. 1,1/2") from None


def cmd_jordan(args, session: Session) -> Report:
    m = parse_multisegment(args.expression, session.context())
    N = nilpotent_of(m)
    if args.scalars:
        N = induced_block(N, _scalars(args.scalars))
    partition = jordan_partition(N)
    lines = [str(partition)]
    if args.matrix:
        lines.append(str(N))
    return Report(lines, {"verb": "jordan", "size": N.n_rows, "jordan": partition.to_json(), "matrix": N.to_json()})


def cmd_batch(args, session: Session) -> Report:
    rows = run_batch(load_sweeps(Path(args.sweep_file)), session.config.fiber.max_assignments)
    data = {"verb": "batch", "rows": [asdict(row) for row in rows]}
    if session.out is None:
        buffer = io.StringIO()
        write_csv(rows, buffer)
        return Report(buffer.getvalue().rstrip("\n").splitlines(), data)

    with open(session.out, "w", newline="") as f:
        write_csv(rows, f)
    logger.info("wrote %d row(s) to %s", len(rows), session.out)
    summary: Dict[Tuple[int, int], List[int]] = {}
    for row in rows:
        summary.setdefault((row.s, row.d), []).append(row.d_count)
    return Report(
        [f"wrote {len(rows)} row(s) to {session.out}"],
        data,
        title="d_count by (s, d)",
        columns=("s", "d", "shapes", "min d_count", "max d_count"),
        rows=[(s, d, len(counts), min(counts), max(counts)) for (s, d), counts in sorted(summary.items())],
    )


def cmd_random(args, session: Session) -> Report:
    settings = session.config.random
    seed = session.seed if session.seed is not None else settings.seed
    corpus = [str(m) for m in random_corpus(seed, args.count, settings.max_segments, settings.max_degree)]
    return Report(corpus, {"verb": "random", "seed": seed, "multisegments": corpus})


COMMANDS: Dict[str, Callable] = {
    "dual": cmd_dual,
    "sl2": cmd_sl2,
    "depth": cmd_depth,
    "whittaker-positions": cmd_whittaker,
    "klyachko": cmd_klyachko,
    "is-ladder": cmd_is_ladder,
    "decompose": cmd_decompose,
    "bc": _transfer("bc", bc),
    "ai": _transfer("ai", ai),
    "twist": cmd_twist,
    "fiber": cmd_fiber,
    "jordan": cmd_jordan,
    "batch": cmd_batch,
    "random": cmd_random,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit JSON instead of text")
    common.add_argument("--context", type=Path, default=None, help="Extension context file")
    common.add_argument("--d", type=int, default=None, help="Prime degree of the extension")
    common.add_argument("--seed", type=int, default=None, help="Seed for random corpora")
    common.add_argument("--out", type=Path, default=None, help="CSV output file for batch")
    common.add_argument("--config", type=Path, default=None, help="Configuration file")
    common.add_argument(
        "--assert-irreducible",
        action="store_true",
        help="Accept products of factors on a common line",
    )
    common.add_argument("-v", "--verbose", action="count", default=0, help="More logging (-vv for debug)")

    parser = argparse.ArgumentParser(
        prog="mscalc",
        description="Multisegment calculator - Zelevinsky involution, SL(2)-types, Klyachko types, "
        "base change and automorphic induction fibers",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument("--version", action="version", version=f"mscalc v{__version__}")
    verbs = parser.add_subparsers(dest="verb", required=True, metavar="<verb>")

    def verb(name: str, help_text: str, expression: bool = True) -> argparse.ArgumentParser:
        sub = verbs.add_parser(name, help=help_text, parents=[common])
        if expression:
            sub.add_argument("expression", help="Multisegment or representation expression")
        return sub

    verb("dual", "Zelevinsky involution").add_argument(
        "--normalize", action="store_true", help="Also dualise the multisegment: L(m) becomes Z(m^t)"
    )
    verb("sl2", "SL(2)-type")
    verb("depth", "Depth sequence")
    verb("whittaker-positions", "Non-trivial slots of the degenerate Whittaker character")
    verb("klyachko", "Klyachko type")
    verb("is-ladder", "Ladder, proper ladder, Speh and generic tests")
    verb("decompose", "Proper decomposition of a ladder")
    verb("bc", "Base change")
    verb("ai", "Automorphic induction")
    verb("twist", "Twist by kappa^J or by the J-th Galois power").add_argument(
        "--by", type=int, default=1, metavar="J", help="Twist exponent (default: 1)"
    )
    fiber = verb("fiber", "Enumerate a bc or ai fiber")
    fiber.add_argument("--kind", choices=("bc", "ai"), default="bc")
    fiber.add_argument("--count-klyachko", action="store_true", help="Count elements of the target's type")
    fiber.add_argument("--emit-elements", action="store_true", help="List every fiber element")
    jordan = verb("jordan", "Jordan partition of the nilpotent matrix of a multisegment")
    jordan.add_argument("--scalars", default=None, help="Scalars of the induced block, e.g. 1,1/2")
    jordan.add_argument("--matrix", action="store_true", help="Print the matrix")
    verb("batch", "Run a sweep file and write CSV rows", expression=False).add_argument(
        "sweep_file", help="TOML file of [[sweep]] tables"
    )
    verb("random", "Print random rigid multisegments", expression=False).add_argument(
        "--count", type=int, default=10, help="Number of multisegments (default: 10)"
    )
    return parser


def configure_logging(level_name: str, verbosity: int) -> None:
    level = getattr(logging, level_name.upper(), logging.WARNING)
    if verbosity == 1:
        level = min(level, logging.INFO)
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def run(argv: Sequence[str]) -> Tuple[int, str]:
    """Run one command; returns the exit status and the text to print."""
    args = build_parser().parse_args(list(argv))
    try:
        config = Config.load(args.config)
        configure_logging(config.logging.level, args.verbose)
        session = Session(
            config=config,
            as_json=args.json or config.output.json,
            context_path=args.context,
            d=args.d,
            seed=args.seed,
            out=args.out,
            assert_irreducible=args.assert_irreducible,
        )
        logger.info("running %s", args.verb)
        report = COMMANDS[args.verb](args, session)
        return 0, report.render(session.as_json, config.output.json_schema_version)
    except MscalcError as exc:
        return 2, f"error[{exc.code}]: {exc.message}"
    except OSError as exc:
        return 2, f"error[E_IO]: {exc}"


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Entry point for the application."""
    code, output = run(sys.argv[1:] if argv is None else argv)
    if code == 0:
        print(output)
    else:
        error_console().print(output, markup=False)
    sys.exit(code)
