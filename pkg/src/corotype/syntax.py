"""Concrete syntax for coroutine types and programs.

Types::

    type      := primary ('^' length)*
    primary   := coroutine | seq | tuple | atom
    coroutine := [IDENT ['*'] ':'] '<' type ';' type '>'
    seq       := '[' type (',' type)* ']'
    tuple     := '(' type (',' type)+ ')'
    atom      := UIDENT | LIDENT | '@' IDENT | 'void'
    length    := NAT | LIDENT | 'dec' '(' length ')'
               | 'min' '(' length ',' length ')' | '*'

A program has one declaration per line, ``[label ['*'] ':'] type``, with
``#`` comments and blank lines ignored.  A label in front of a declaration
is the label of the declared coroutine, so the same notation also works for
coroutines nested inside other types.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import (
    STAR,
    VOID,
    Concrete,
    CoroTypeError,
    Coroutine,
    Dec,
    Fresh,
    LengthExpr,
    ListOf,
    Literal,
    LVar,
    Min,
    Ref,
    Seq,
    Star,
    Tuple,
    TypeExpr,
    Var,
    Void,
    normalize,
    rename,
)


class ParseError(CoroTypeError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class ProgramError(CoroTypeError):
    """A program parses but is not well formed (labels, references, stars)."""


# --- lexer -----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nat>\d+)
  | (?P<uident>[A-Z][A-Za-z0-9_]*)
  | (?P<lident>[^\W\dA-Z_][\w]*(?:\#\d+)?)
  | (?P<punct>[<>;\[\](),^*:@])
  | (?P<newline>\n)
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "newline":
            tokens.append(Token("newline", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "comment":
            # '#' inside an identifier is consumed by lident, so this is a real comment
            pass
        elif kind != "ws":
            tokens.append(Token(kind if kind != "punct" else m.group(), m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# --- parser ----------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        return self.advance()

    def at_label(self) -> bool:
        if self.tok.kind not in ("lident", "uident"):
            return False
        nxt = self.peek()
        return nxt.kind == ":" or (nxt.kind == "*" and self.peek(2).kind == ":")

    def type_(self) -> TypeExpr:
        start = self.tok
        t = self.primary()
        while self.tok.kind == "^":
            if isinstance(t, Seq):
                raise self.error("'^' cannot be applied to a sequence", start)
            self.advance()
            t = ListOf(t, self.list_length())
        return t

    def primary(self) -> TypeExpr:
        tok = self.tok
        if self.at_label():
            label = self.advance().text
            starred = False
            if self.tok.kind == "*":
                self.advance()
                starred = True
            self.expect(":")
            if self.tok.kind != "<":
                raise self.error(f"label {label!r} must name a coroutine")
            return self.coroutine(label, starred)
        match tok.kind:
            case "<":
                return self.coroutine(None, False)
            case "[":
                self.advance()
                items = [self.type_()]
                while self.tok.kind == ",":
                    self.advance()
                    items.append(self.type_())
                self.expect("]")
                return Seq(tuple(items))
            case "(":
                self.advance()
                if self.tok.kind == ")":
                    raise self.error("empty tuple")
                items = [self.type_()]
                while self.tok.kind == ",":
                    self.advance()
                    items.append(self.type_())
                if len(items) < 2:
                    raise self.error("a tuple needs at least two components", tok)
                self.expect(")")
                return Tuple(tuple(items))
            case "@":
                self.advance()
                if self.tok.kind not in ("lident", "uident"):
                    raise self.error("expected a label after '@'")
                return Ref(self.advance().text)
            case "uident":
                return Concrete(self.advance().text)
            case "lident":
                self.advance()
                return VOID if tok.text == "void" else Var(tok.text)
        raise self.error(f"expected a type, found {tok.text or 'end of input'!r}")

    def coroutine(self, label: str | None, starred: bool) -> Coroutine:
        self.expect("<")
        recv = self.type_()
        self.expect(";")
        yld = self.type_()
        self.expect(">")
        return Coroutine(recv, yld, label, starred)

    def list_length(self) -> LengthExpr:
        if self.tok.kind == "*":
            self.advance()
            return STAR
        return self.length()

    def length(self) -> LengthExpr:
        tok = self.tok
        if tok.kind == "nat":
            return Literal(int(self.advance().text))
        if tok.kind == "lident":
            if tok.text in ("dec", "min") and self.peek().kind == "(":
                self.advance()
                self.advance()
                a = self.length()
                if tok.text == "min":
                    self.expect(",")
                    b = self.length()
                    self.expect(")")
                    return Min(a, b)
                self.expect(")")
                return Dec(a)
            return LVar(self.advance().text)
        raise self.error(f"expected a length, found {tok.text or 'end of input'!r}")


def parse_type(text: str) -> TypeExpr:
    p = _Parser([t for t in tokenize(text) if t.kind != "newline"])
    t = p.type_()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after type")
    return normalize(t)


# --- programs --------------------------------------------------------------

@dataclass(frozen=True)
class Decl:
    type: TypeExpr
    line: int = 0

    @property
    def label(self) -> str | None:
        return self.type.label if isinstance(self.type, Coroutine) else None

    @property
    def starred(self) -> bool:
        return isinstance(self.type, Coroutine) and self.type.starred


@dataclass(frozen=True)
class Program:
    decls: tuple[Decl, ...] = ()
    labels: dict[str, Coroutine] = field(default_factory=dict, compare=False)

    @property
    def types(self) -> list[TypeExpr]:
        return [d.type for d in self.decls]


def labeled_coroutines(t: TypeExpr):
    """Yield every labeled coroutine inside ``t``, outermost first."""
    match t:
        case Coroutine(recv, yld, label):
            if label is not None:
                yield t
            yield from labeled_coroutines(recv)
            yield from labeled_coroutines(yld)
        case Seq(items) | Tuple(items):
            for i in items:
                yield from labeled_coroutines(i)
        case ListOf(elem):
            yield from labeled_coroutines(elem)


def refs(t: TypeExpr):
    match t:
        case Ref(label):
            yield label
        case Coroutine(recv, yld):
            yield from refs(recv)
            yield from refs(yld)
        case Seq(items) | Tuple(items):
            for i in items:
                yield from refs(i)
        case ListOf(elem):
            yield from refs(elem)


def collect_labels(types) -> dict[str, Coroutine]:
    """Label table for a list of types.

    A label may be declared more than once only with the same body (up to
    variable suffixes); anything else is a ``ProgramError``.
    """
    labels: dict[str, Coroutine] = {}
    for t in types:
        for co in labeled_coroutines(t):
            prev = labels.get(co.label)
            if prev is None:
                labels[co.label] = co
            elif rename(prev, "") != rename(co, ""):
                raise ProgramError(f"label {co.label!r} declared twice with different bodies")
    for t in types:
        for r in refs(t):
            if r not in labels:
                raise ProgramError(f"reference @{r} does not name a labeled coroutine")
    return labels


def parse_program(text: str) -> Program:
    decls = []
    lines = text.split("\n")
    for lineno, line in enumerate(lines, start=1):
        tokens = [t for t in tokenize(line) if t.kind != "newline"]
        if tokens[0].kind == "eof":
            continue
        for t in tokens:
            t.line = lineno
        p = _Parser(tokens)
        t = p.type_()
        if p.tok.kind != "eof":
            raise p.error(f"unexpected {p.tok.text!r} after declaration")
        decls.append(Decl(normalize(t), lineno))
    return Program(tuple(decls), collect_labels([d.type for d in decls]))


# --- printer ---------------------------------------------------------------

def print_length(length: LengthExpr) -> str:
    match length:
        case Literal(n):
            return str(n)
        case LVar(name):
            return name
        case Fresh():
            return length.name
        case Dec(inner):
            return f"dec({print_length(inner)})"
        case Min(a, b):
            return f"min({print_length(a)}, {print_length(b)})"
        case Star():
            return "*"
    raise TypeError(f"not a length expression: {length!r}")


def print_type(t: TypeExpr) -> str:
    match t:
        case Void():
            return "void"
        case Concrete(name) | Var(name):
            return name
        case Ref(label):
            return f"@{label}"
        case Seq(items):
            return "[" + ", ".join(print_type(i) for i in items) + "]"
        case Tuple(items):
            return "(" + ", ".join(print_type(i) for i in items) + ")"
        case ListOf(elem, length):
            return f"{print_type(elem)}^{print_length(length)}"
        case Coroutine(recv, yld, label, starred):
            prefix = "" if label is None else f"{label}{'*' if starred else ''}: "
            return f"{prefix}<{print_type(recv)} ; {print_type(yld)}>"
    raise TypeError(f"not a type expression: {t!r}")


def print_program(program: Program) -> str:
    return "".join(print_type(d.type) + "\n" for d in program.decls)
