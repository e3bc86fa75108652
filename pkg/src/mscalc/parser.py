"""Reader and printer for the textual multisegment syntax.

Grammar::

    expr    := '1' | term ('*' term)*
    term    := ['L' | 'Z'] msum
    msum    := group ('+' group)*
    group   := '{' [seg (',' seg)*] '}' ['@' line]
    seg     := '[' INT ',' INT ']'
    line    := NAME ['#' role] ['(' arg (',' arg)* ')']
    role    := ('SmallF' | 'SmallE') '(' INT ')' | 'FixedF' | 'FixedE'
    arg     := 'k' '=' INT | 'off' '=' INT ['/' INT]

A missing presentation prefix means ``L``.
"""

import re
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Optional, Tuple

from .errors import ContextError, InvalidValue, ParseError
from .functorial import ExtensionContext
from .segments import (
    CuspidalAtom,
    CuspidalLine,
    Factor,
    FieldSide,
    Multisegment,
    OrbitRole,
    Presentation,
    Rep,
)

TOKENS = {
    "int": r"-?\d+",
    "name": r"[A-Za-z_][A-Za-z0-9_]*",
    "lbrace": r"\{",
    "rbrace": r"\}",
    "lbracket": r"\[",
    "rbracket": r"\]",
    "lpar": r"\(",
    "rpar": r"\)",
    "comma": r",",
    "at": r"@",
    "hash": r"\#",
    "equal": r"=",
    "slash": r"/",
    "plus": r"\+",
    "star": r"\*",
    "skip": r"[ \t\r\n]+",
    "error": r".",
}
TOKEN_RE = re.compile("|".join(f"(?P<{name}>{text})" for name, text in TOKENS.items()))

ROLES = {
    "SmallF": (FieldSide.BASE, True),
    "SmallE": (FieldSide.EXTENSION, True),
    "FixedF": (FieldSide.BASE, False),
    "FixedE": (FieldSide.EXTENSION, False),
}


class Token(NamedTuple):
    type: str
    value: str
    where: int


def _position(source: str, offset: int) -> Tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    column = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, column


def tokenize(source: str) -> Iterator[Token]:
    for mo in TOKEN_RE.finditer(source):
        kind = str(mo.lastgroup)
        if kind == "skip":
            continue
        if kind == "error":
            line, column = _position(source, mo.start())
            raise ParseError(f"unexpected character {mo.group()!r}", line, column, source)
        yield Token(kind, mo.group(), mo.start())
    yield Token("eof", "", len(source))


class Parser:
    def __init__(self, source: str, ctx: Optional[ExtensionContext] = None):
        self.source = source
        self.ctx = ctx
        self.tokens: List[Token] = list(tokenize(source))
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        line, column = _position(self.source, token.where)
        return ParseError(message, line, column, self.source)

    def advance(self) -> Token:
        token = self.current
        if token.type != "eof":
            self.index += 1
        return token

    def accept(self, kind: str, value: Optional[str] = None) -> Optional[Token]:
        token = self.current
        if token.type == kind and (value is None or token.value == value):
            return self.advance()
        return None

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        token = self.accept(kind, value)
        if token is None:
            wanted = value or kind
            found = self.current.value or "end of input"
            raise self.error(f"expected {wanted}, found {found!r}")
        return token

    def finish(self):
        if self.current.type != "eof":
            raise self.error(f"unexpected {self.current.value!r} after expression")

    def integer(self) -> int:
        return int(self.expect("int").value)

    # expr := '1' | term ('*' term)*
    def expression(self, assert_irreducible: bool) -> Rep:
        if self.current.type == "int" and self.current.value == "1":
            self.advance()
            return Rep()
        factors = list(self.term())
        while self.accept("star"):
            factors.extend(self.term())
        return Rep(tuple(factors), assert_irreducible)

    def term(self) -> List[Factor]:
        presentation = Presentation.L
        token = self.current
        if token.type == "name" and token.value in ("L", "Z"):
            self.advance()
            presentation = Presentation(token.value)
        m = self.multisegment()
        return [Factor(presentation, part) for part in m.by_line().values()]

    def multisegment(self) -> Multisegment:
        m = self.group()
        while self.accept("plus"):
            m = m + self.group()
        return m

    def group(self) -> Multisegment:
        opening = self.expect("lbrace")
        pairs = []
        if not self.accept("rbrace"):
            pairs.append(self.segment())
            while self.accept("comma"):
                pairs.append(self.segment())
            self.expect("rbrace")
        if self.accept("at"):
            line = self.line()
        elif pairs:
            raise self.error("segments need a line, as in {[0,1]}@rho(k=1)", opening)
        else:
            return Multisegment()
        return Multisegment.on_line(line, pairs)

    def segment(self) -> Tuple[int, int]:
        opening = self.expect("lbracket")
        a = self.integer()
        self.expect("comma")
        b = self.integer()
        self.expect("rbracket")
        if a > b:
            raise self.error(f"segment [{a},{b}] has begin after end", opening)
        return a, b

    def line(self) -> CuspidalLine:
        name_token = self.expect("name")
        name = name_token.value
        role = None
        if self.accept("hash"):
            role = self.role()
        k: Optional[int] = None
        offset = Fraction(0)
        if self.accept("lpar"):
            while True:
                key = self.expect("name")
                self.expect("equal")
                if key.value == "k":
                    k = self.integer()
                elif key.value == "off":
                    numerator = self.integer()
                    denominator = self.integer() if self.accept("slash") else 1
                    if denominator == 0:
                        raise self.error("offset denominator is zero", key)
                    offset = Fraction(numerator, denominator)
                else:
                    raise self.error(f"unknown line argument {key.value!r}", key)
                if not self.accept("comma"):
                    break
            self.expect("rpar")
        try:
            return CuspidalLine(self.atom(name, role, k), offset)
        except (InvalidValue, ContextError) as exc:
            raise self.error(exc.message, name_token) from exc

    def role(self) -> Tuple[str, Optional[int]]:
        token = self.expect("name")
        if token.value not in ROLES:
            raise self.error(f"unknown orbit role {token.value!r}", token)
        index = None
        if ROLES[token.value][1]:
            self.expect("lpar")
            index = self.integer()
            self.expect("rpar")
        return token.value, index

    def atom(self, name: str, role: Optional[Tuple[str, Optional[int]]], k: Optional[int]) -> CuspidalAtom:
        if role is None:
            return CuspidalAtom(name, 1 if k is None else k)
        label, index = role
        if self.ctx is not None:
            if index is not None and index >= self.ctx.d:
                raise ContextError(f"{label}({index}) is out of range for d={self.ctx.d}")
            atom = self.ctx.small_atom(name, index) if index is not None else self.ctx.fixed_atom(name)
            if atom.side != ROLES[label][0]:
                raise ContextError(f"orbit {name!r} has no {label} atom; it is {atom.role_label}")
            if k is not None and k != atom.dim_k:
                raise ContextError(f"orbit {name!r} declares k={atom.dim_k} for {label}, got k={k}")
            return atom
        side, small = ROLES[label]
        orbit_role = OrbitRole.small(name, index) if small else OrbitRole.fixed(name)
        return CuspidalAtom(name, 1 if k is None else k, side, orbit_role)


def parse_multisegment(text: str, ctx: Optional[ExtensionContext] = None) -> Multisegment:
    """Parse ``{[a,b],...}@line`` groups joined by ``+``.

    Raises:
        ParseError: on a syntax error, with 1-based line and column
        UnregisteredAtom: if an orbit annotation names an orbit missing from ``ctx``
    """
    parser = Parser(text, ctx)
    m = parser.multisegment()
    parser.finish()
    return m


def parse_rep(text: str, ctx: Optional[ExtensionContext] = None, assert_irreducible: bool = False) -> Rep:
    """Parse a product of ``L``/``Z`` terms, or ``1`` for the trivial representation."""
    parser = Parser(text, ctx)
    rep = parser.expression(assert_irreducible)
    parser.finish()
    return rep


def format_multisegment(m: Multisegment) -> str:
    return str(m)


def format_rep(rep: Rep) -> str:
    return str(rep)
