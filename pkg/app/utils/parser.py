"""
Parser for class declaration files and type expressions

    program := decl*
    decl    := "class" IDENT ("<" IDENT ">")? "extends" IDENT "{" "}"

    type    := IDENT | IDENT "<" arg ">"
    arg     := "?" | "?" ("extends" | "<:") type | "?" ("super" | ":>") type | type

Whitespace is insignificant and "//" starts a comment running to the end
of the line. "O" and "N" abbreviate Object and Null. Type arguments may nest
at most SUBOP_MAX_TYPE_DEPTH levels deep.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import List, NoReturn, Optional

from app.core.config import settings
from app.core.exceptions import ParseError
from app.models.class_table import ClassTable, Declaration
from app.models.types import (
    ALIASES,
    UNBOUNDED,
    Extends,
    Generic,
    GroundType,
    Invariant,
    Named,
    Super,
    VarianceArg,
    canonicalize,
)

logger = logging.getLogger(__name__)


class TokenKind(Enum):
    IDENT = "identifier"
    CLASS = "'class'"
    EXTENDS = "'extends'"
    SUPER = "'super'"
    SUBTYPE = "'<:'"
    SUPERTYPE = "':>'"
    LANGLE = "'<'"
    RANGLE = "'>'"
    QUESTION = "'?'"
    LBRACE = "'{'"
    RBRACE = "'}'"
    EOF = "end of input"


KEYWORDS = {"class": TokenKind.CLASS, "extends": TokenKind.EXTENDS, "super": TokenKind.SUPER}

# Order matters: the two-character operators must win over '<'.
_TOKEN_PATTERNS = [
    ("SKIP", r"[ \t\r]+|//[^\n]*"),
    ("NEWLINE", r"\n"),
    ("SUBTYPE", r"<:"),
    ("SUPERTYPE", r":>"),
    ("LANGLE", r"<"),
    ("RANGLE", r">"),
    ("QUESTION", r"\?"),
    ("LBRACE", r"\{"),
    ("RBRACE", r"\}"),
    ("IDENT", r"[A-Za-z_$][A-Za-z0-9_$]*"),
    ("MISMATCH", r"."),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_PATTERNS))


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(source):
        group = match.lastgroup
        text = match.group()
        column = match.start() - line_start + 1
        if group == "NEWLINE":
            line += 1
            line_start = match.end()
            continue
        if group == "SKIP":
            continue
        if group == "MISMATCH":
            raise ParseError(f"unexpected character {text!r}", line, column)
        if group == "IDENT":
            kind = KEYWORDS.get(text, TokenKind.IDENT)
        else:
            kind = TokenKind[group]
        tokens.append(Token(kind, text, line, column))
    tokens.append(Token(TokenKind.EOF, "", line, len(source) - line_start + 1))
    return tokens


class Parser:
    """Recursive descent over a token list"""

    def __init__(self, source: str, max_depth: Optional[int] = None):
        self.tokens = tokenize(source)
        self.cursor = 0
        self.depth = 0
        self.max_depth = settings.MAX_TYPE_DEPTH if max_depth is None else max_depth

    def peek(self) -> Token:
        return self.tokens[self.cursor]

    def advance(self) -> Token:
        token = self.tokens[self.cursor]
        if token.kind is not TokenKind.EOF:
            self.cursor += 1
        return token

    def accept(self, kind: TokenKind) -> Optional[Token]:
        if self.peek().kind is kind:
            return self.advance()
        return None

    def expect(self, kind: TokenKind) -> Token:
        token = self.peek()
        if token.kind is not kind:
            self.abort(f"expected {kind.value}, found {self.describe(token)}")
        return self.advance()

    def abort(self, message: str, token: Optional[Token] = None) -> NoReturn:
        token = token or self.peek()
        raise ParseError(message, token.line, token.column)

    @staticmethod
    def describe(token: Token) -> str:
        if token.kind is TokenKind.EOF:
            return TokenKind.EOF.value
        return f"'{token.text}'"

    # Declarations

    def parse_program(self) -> List[Declaration]:
        declarations: List[Declaration] = []
        while self.peek().kind is not TokenKind.EOF:
            declarations.append(self.parse_declaration())
        return declarations

    def parse_declaration(self) -> Declaration:
        start = self.expect(TokenKind.CLASS)
        name = self.expect(TokenKind.IDENT).text
        type_parameter = None
        if self.accept(TokenKind.LANGLE):
            type_parameter = self.expect(TokenKind.IDENT).text
            self.expect(TokenKind.RANGLE)
        self.expect(TokenKind.EXTENDS)
        superclass = self.expect(TokenKind.IDENT).text
        self.expect(TokenKind.LBRACE)
        self.expect(TokenKind.RBRACE)
        return Declaration(
            name=name,
            arity=1 if type_parameter is not None else 0,
            superclass=ALIASES.get(superclass, superclass),
            type_parameter=type_parameter,
            line=start.line,
            column=start.column,
        )

    # Types

    def parse_type(self) -> GroundType:
        name = self.expect(TokenKind.IDENT).text
        name = ALIASES.get(name, name)
        opening = self.accept(TokenKind.LANGLE)
        if not opening:
            return Named(name)
        self.depth += 1
        if self.depth > self.max_depth:
            self.abort(f"type arguments nested deeper than {self.max_depth} levels", opening)
        arg = self.parse_argument()
        self.expect(TokenKind.RANGLE)
        self.depth -= 1
        return Generic(name, arg)

    def parse_argument(self) -> VarianceArg:
        if not self.accept(TokenKind.QUESTION):
            return Invariant(self.parse_type())
        if self.accept(TokenKind.EXTENDS) or self.accept(TokenKind.SUBTYPE):
            return Extends(self.parse_type())
        if self.accept(TokenKind.SUPER) or self.accept(TokenKind.SUPERTYPE):
            return Super(self.parse_type())
        return UNBOUNDED


def parse_program(source: str) -> ClassTable:
    """Parse a declaration file into a validated class table"""
    declarations = Parser(source).parse_program()
    table = ClassTable.from_declarations(declarations)
    logger.debug(
        "Parsed class table",
        extra={"classes": len(table.declarations), "generic_classes": len(table.generic_classes)},
    )
    return table


def parse_type(source: str, table: ClassTable, max_depth: Optional[int] = None) -> GroundType:
    """
    Parse a type expression and return its canonical form over ``table``.

    Raises ParseError when type arguments nest deeper than ``max_depth``
    (SUBOP_MAX_TYPE_DEPTH by default).
    """
    parser = Parser(source, max_depth)
    raw = parser.parse_type()
    trailing = parser.peek()
    if trailing.kind is not TokenKind.EOF:
        parser.abort(f"unexpected {Parser.describe(trailing)} after type")
    return canonicalize(raw, table)
