"""Lexer and recursive-descent parser for ``.catt`` source files.

The parser tracks which identifiers are bound variables in scope. A bound
variable never takes an argument list, which is how an inline coherence
``coh (x : *) ... : s -> t [args]`` knows that ``[`` starts its own
arguments rather than an application of ``t``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .errors import ParseError

Span = Tuple[int, int]


# ---------------------------------------------------------------------------
# surface syntax

@dataclass(frozen=True)
class SVar:
    name: str
    span: Span = (0, 0)


@dataclass(frozen=True)
class SApp:
    name: str
    args: Tuple["STerm", ...]
    span: Span = (0, 0)


@dataclass(frozen=True)
class SCoh:
    binders: Tuple["Binder", ...]
    ty: "SType"
    args: Tuple["STerm", ...]
    span: Span = (0, 0)


@dataclass(frozen=True)
class SStar:
    span: Span = (0, 0)


@dataclass(frozen=True)
class SArrow:
    src: "STerm"
    tgt: "STerm"
    base: Optional["SType"] = None
    span: Span = (0, 0)


STerm = Union[SVar, SApp, SCoh]
SType = Union[SStar, SArrow]


@dataclass(frozen=True)
class Binder:
    name: str
    ty: SType
    span: Span = (0, 0)


@dataclass(frozen=True)
class Declaration:
    kind: str  # "coh" or "let"
    name: str
    binders: Tuple[Binder, ...]
    ty: Optional[SType]
    body: Optional[STerm]
    span: Span = (0, 0)


# ---------------------------------------------------------------------------
# lexer

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<arrow>->|→)
  | (?P<star>\*|⋆)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[()\[\]:,=])
    """,
    re.VERBOSE,
)

KEYWORDS = {"coh", "let"}


def tokenize(source: str) -> List[Token]:
    out: List[Token] = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            line, col = line_col(source, pos)
            raise ParseError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "ident":
            if text in KEYWORDS:
                kind = text
            elif text == "star":
                kind = "star"
        elif kind == "punct":
            kind = text
        elif kind == "arrow":
            kind = "->"
        if kind != "ws":
            out.append(Token(kind, text, pos))
        pos = m.end()
    out.append(Token("eof", "", len(source)))
    return out


def line_col(source: str, pos: int) -> Tuple[int, int]:
    line = source.count("\n", 0, pos) + 1
    col = pos - (source.rfind("\n", 0, pos) + 1) + 1
    return line, col


# ---------------------------------------------------------------------------
# parser

class Parser:
    def __init__(self, source: str) -> None:
        self.source = source
        self.toks = tokenize(source)
        self.i = 0
        self.scopes: List[set] = []

    # -- helpers -----------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, expected: Sequence[str], message: str = "") -> ParseError:
        line, col = line_col(self.source, self.tok.pos)
        got = self.tok.text or "end of input"
        return ParseError(message or f"unexpected {got!r}", line, col, set(expected))

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.error([kind])
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind: str) -> Optional[Token]:
        if self.tok.kind == kind:
            t = self.tok
            self.i += 1
            return t
        return None

    def bound(self, name: str) -> bool:
        return any(name in s for s in self.scopes)

    # -- grammar -----------------------------------------------------------

    def parse_file(self) -> List[Declaration]:
        decls = []
        while self.tok.kind != "eof":
            decls.append(self.parse_decl())
        return decls

    def parse_decl(self) -> Declaration:
        start = self.tok.pos
        if self.accept("coh"):
            name = self.expect("ident").text
            self.scopes.append(set())
            binders = self.parse_binders(require=True)
            self.expect(":")
            ty = self.parse_type()
            self.scopes.pop()
            return Declaration("coh", name, binders, ty, None, (start, self.prev_end()))
        if self.accept("let"):
            name = self.expect("ident").text
            self.scopes.append(set())
            binders = self.parse_binders(require=False)
            ty = None
            if self.accept(":"):
                ty = self.parse_type()
            self.expect("=")
            body = self.parse_term()
            self.scopes.pop()
            return Declaration("let", name, binders, ty, body, (start, self.prev_end()))
        raise self.error(["coh", "let"])

    def prev_end(self) -> int:
        t = self.toks[self.i - 1]
        return t.pos + len(t.text)

    def parse_binders(self, require: bool) -> Tuple[Binder, ...]:
        out = []
        while self.tok.kind == "(":
            start = self.tok.pos
            self.i += 1
            name = self.expect("ident").text
            self.expect(":")
            ty = self.parse_type()
            self.expect(")")
            out.append(Binder(name, ty, (start, self.prev_end())))
            self.scopes[-1].add(name)
        if require and not out:
            raise self.error(["("], "a coherence needs at least one binder")
        return tuple(out)

    def parse_type(self) -> SType:
        start = self.tok.pos
        if self.accept("star"):
            return SStar((start, self.prev_end()))
        if self.tok.kind not in ("ident", "coh"):
            raise self.error(["*", "identifier", "coh"])
        src = self.parse_term()
        self.expect("->")
        base = None
        if self.accept("["):
            base = self.parse_type()
            self.expect("]")
        tgt = self.parse_term()
        return SArrow(src, tgt, base, (start, self.prev_end()))

    def parse_term(self) -> STerm:
        start = self.tok.pos
        if self.accept("coh"):
            self.scopes.append(set())
            binders = self.parse_binders(require=True)
            self.expect(":")
            ty = self.parse_type()
            self.scopes.pop()
            args = self.parse_args()
            return SCoh(binders, ty, args, (start, self.prev_end()))
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(["identifier", "coh"])
        self.i += 1
        if self.tok.kind == "[" and not self.bound(tok.text):
            args = self.parse_args()
            return SApp(tok.text, args, (start, self.prev_end()))
        return SVar(tok.text, (start, self.prev_end()))

    def parse_args(self) -> Tuple[STerm, ...]:
        self.expect("[")
        args = []
        if self.tok.kind != "]":
            args.append(self.parse_term())
            while self.accept(","):
                args.append(self.parse_term())
        self.expect("]")
        return tuple(args)


def parse(source: str) -> List[Declaration]:
    """Parse a whole ``.catt`` file into declarations."""
    return Parser(source).parse_file()


def parse_term(source: str, scope: Sequence[str] = ()) -> STerm:
    p = Parser(source)
    p.scopes.append(set(scope))
    t = p.parse_term()
    p.expect("eof")
    return t


def parse_type(source: str, scope: Sequence[str] = ()) -> SType:
    p = Parser(source)
    p.scopes.append(set(scope))
    t = p.parse_type()
    p.expect("eof")
    return t
