"""Parser for the textual expression syntax.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' nat)?
    atom   := nat | ident | gen | qletter | '(' expr ')' | '-' factor
    gen    := ('xi'|'eta'|'dxi'|'deta') '[' nat ']'

Identifiers are the indeterminates of the active scalar context. The letters
A, B, C, D are matrix entries and only exist in the quantum-matrix mode.
Divisors must be nonzero scalars.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Any

from .algebra import Combination, Expr, Generator, Kind
from .const import (
    DEFAULT_LEVEL_BOUND,
    GENERAL_INDETERMINATES,
    MODE_GENERAL,
    MODE_PLANE,
    MODE_QGROUP,
    PARSE_MODES,
    PLANE_INDETERMINATES,
)
from .exceptions import DomainError, ParseError
from .qgroup import QExpr, QLetter
from .scalars import ScalarContext

_LOGGER = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(
    r"""
    (?P<space>\s+)
    |(?P<integer>\d+)
    |(?P<name>[A-Za-z_][A-Za-z0-9_]*)
    |(?P<op>[-+*/^()\[\]])
    |(?P<error>.)
    """,
    re.VERBOSE | re.DOTALL,
)

EOF_TOKEN = "end of input"


@dataclass(frozen=True)
class Token:
    """A lexical token with its offset into the source."""

    kind: str
    value: str
    offset: int


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens, ending with an end-of-input token."""
    tokens = []
    for match in TOKEN_PATTERN.finditer(text):
        kind = match.lastgroup
        if kind == "space":
            continue
        if kind == "error":
            line, column = position(text, match.start())
            raise ParseError(
                line, column, found=match.group(), message=f"invalid character {match.group()!r}"
            )
        tokens.append(Token(kind, match.group(), match.start()))
    tokens.append(Token("eof", "", len(text)))
    return tokens


def position(text: str, offset: int) -> tuple[int, int]:
    """Return the 1-based line and column of ``offset``."""
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


class Parser:
    """Recursive-descent parser producing Expr or QExpr."""

    def __init__(
        self,
        text: str,
        ctx: ScalarContext,
        mode: str = MODE_PLANE,
        level_bound: int = DEFAULT_LEVEL_BOUND,
    ) -> None:
        """Initialize the parser."""
        if mode not in PARSE_MODES:
            raise DomainError(f"unknown parse mode {mode!r}")
        self.text = text
        self.ctx = ctx
        self.mode = mode
        self.level_bound = level_bound
        self.result_type: type[Combination] = QExpr if mode == MODE_QGROUP else Expr
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        """The token under the cursor."""
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _error(
        self, expected: set[str], token: Token | None = None, message: str = ""
    ) -> ParseError:
        token = token or self.current
        line, column = position(self.text, token.offset)
        return ParseError(line, column, expected, token.value or EOF_TOKEN, message)

    def _expect(self, value: str) -> Token:
        if self.current.value != value or self.current.kind != "op":
            raise self._error({value})
        return self._advance()

    def _atom_starts(self) -> set[str]:
        starts = {"integer", "(", "-"} | set(self.ctx.names)
        if self.mode == MODE_QGROUP:
            starts |= {letter.value for letter in QLetter}
        else:
            starts |= {kind.label + "[" for kind in Kind}
        return starts

    def _constant(self, value: Any) -> Combination:
        return self.result_type.monomial((), value)

    def parse(self) -> Combination:
        """Parse the whole input."""
        result = self._expr()
        if self.current.kind != "eof":
            raise self._error({"+", "-", "*", "/", "^", EOF_TOKEN})
        _LOGGER.debug("Parsed %r into %d terms", self.text, len(result))
        return result

    def _expr(self) -> Combination:
        result = self._term()
        while self.current.kind == "op" and self.current.value in "+-":
            op = self._advance().value
            rhs = self._term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def _term(self) -> Combination:
        result = self._factor()
        while self.current.kind == "op" and self.current.value in "*/":
            op = self._advance().value
            start = self.current
            rhs = self._factor()
            if op == "*":
                result = result * rhs
                continue
            if not rhs.is_scalar():
                raise self._error(set(), start, "divisor must be a scalar")
            divisor = rhs.scalar_part(None)
            if not divisor:
                line, column = position(self.text, start.offset)
                raise DomainError(f"division by zero at line {line}, column {column}")
            result = result.scale(self.ctx.one / divisor)
        return result

    def _factor(self) -> Combination:
        base = self._atom()
        if self.current.kind == "op" and self.current.value == "^":
            self._advance()
            if self.current.kind != "integer":
                raise self._error({"integer"})
            exponent = int(self._advance().value)
            if exponent == 0:
                return self._constant(self.ctx.one)
            return base**exponent
        return base

    def _atom(self) -> Combination:
        token = self.current
        if token.kind == "integer":
            self._advance()
            return self._constant(self.ctx.from_int(int(token.value)))
        if token.kind == "op" and token.value == "(":
            self._advance()
            inner = self._expr()
            self._expect(")")
            return inner
        if token.kind == "op" and token.value == "-":
            self._advance()
            return -self._factor()
        if token.kind == "name":
            return self._name()
        raise self._error(self._atom_starts())

    def _name(self) -> Combination:
        token = self._advance()
        name = token.value
        if name in self.ctx.names:
            return self._constant(self.ctx[name])
        if self.mode == MODE_QGROUP and name in QLetter.__members__:
            return QExpr.monomial((QLetter(name),), self.ctx.one)
        if self.mode != MODE_QGROUP:
            for kind in Kind:
                if kind.label == name:
                    return Expr.monomial((self._generator(kind),), self.ctx.one)
        raise self._error(self._atom_starts(), token)

    def _generator(self, kind: Kind) -> Generator:
        self._expect("[")
        token = self.current
        if token.kind != "integer":
            raise self._error({"integer"})
        self._advance()
        self._expect("]")
        level = int(token.value)
        if level > self.level_bound:
            line, column = position(self.text, token.offset)
            raise DomainError(
                f"level {level} at line {line}, column {column}"
                f" exceeds the bound {self.level_bound}"
            )
        return Generator(kind, level)


def parse(
    text: str,
    ctx: ScalarContext | None = None,
    mode: str = MODE_PLANE,
    level_bound: int = DEFAULT_LEVEL_BOUND,
) -> Combination:
    """Parse ``text`` into an Expr, or a QExpr in the quantum-matrix mode."""
    if ctx is None:
        names = GENERAL_INDETERMINATES if mode == MODE_GENERAL else PLANE_INDETERMINATES
        ctx = ScalarContext(names)
    return Parser(text, ctx, mode, level_bound).parse()


def parse_generator(text: str, level_bound: int = DEFAULT_LEVEL_BOUND) -> Generator:
    """Parse a single generator such as ``xi[0]``."""
    ctx = ScalarContext()
    e = Parser(text, ctx, MODE_PLANE, level_bound).parse()
    words = list(e.terms.items())
    if len(words) != 1 or len(words[0][0]) != 1 or words[0][1] != 1:
        raise DomainError(f"{text!r} is not a single generator")
    return words[0][0][0]
