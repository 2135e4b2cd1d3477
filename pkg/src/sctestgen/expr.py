"""Guard and action expressions over integer and boolean variables.

The grammar, loosest binding first::

    or_expr  := and_expr ("or" and_expr)*
    and_expr := cmp ("and" cmp)*
    cmp      := sum [("<" | "<=" | ">" | ">=" | "==" | "!=") sum]
    sum      := prod (("+" | "-") prod)*
    prod     := unary ("*" unary)*
    unary    := ("not" | "-") unary | atom
    atom     := INT | "true" | "false" | IDENT | "(" or_expr ")"

Comparisons do not chain: ``a < b < c`` is a parse error.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

INT = "int"
BOOL = "bool"
TYPES = (INT, BOOL)

EXPR_KEYWORDS = frozenset({"true", "false", "and", "or", "not"})


class SourceError(Exception):
    """A located error in textual input; ``kind`` is lex, parse, resolve or type."""

    KINDS = ("lex", "parse", "resolve", "type")

    def __init__(self, line: int, column: int, message: str, kind: str):
        if kind not in self.KINDS:
            raise ValueError(f"unknown error kind {kind!r}")
        super().__init__(f"{line}:{column}: {kind} error: {message}")
        self.line = line
        self.column = column
        self.message = message
        self.kind = kind


# --- lexing -----------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op" or "eof"
    value: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)"
    r"|(?P<comment>#.*)"
    r"|(?P<int>[0-9]+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>:=|->|<=|>=|==|!=|[-+*<>()=:,;])"
)


def tokenize(text: str, line: int = 1, col_offset: int = 0) -> list[Token]:
    """Split one line of text into tokens, ending with an ``eof`` token."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SourceError(line, col_offset + pos + 1,
                              f"unexpected character {text[pos]!r}", "lex")
        kind = m.lastgroup
        if kind == "comment":
            break
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, col_offset + pos + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, col_offset + len(text) + 1))
    return tokens


# --- syntax tree ------------------------------------------------------------

@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "not" or "-"
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[IntLit, BoolLit, Ref, Unary, Binary]

ARITH_OPS = ("+", "-", "*")
ORDER_OPS = ("<", "<=", ">", ">=")
EQ_OPS = ("==", "!=")
CMP_OPS = ORDER_OPS + EQ_OPS
LOGIC_OPS = ("and", "or")

_PREC = {"or": 1, "and": 2, "+": 4, "-": 4, "*": 5}
_PREC.update({op: 3 for op in CMP_OPS})
_UNARY_PREC = 6
_ATOM_PREC = 7


# --- parsing ----------------------------------------------------------------

class TokenStream:
    """Cursor over a token list, shared by the expression and model parsers."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, value: str) -> bool:
        tok = self.peek
        return tok.kind in ("op", "ident") and tok.value == value

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.next()
            return True
        return False

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.fail(f"expected {value!r}")
        return self.next()

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek
        found = "end of line" if tok.kind == "eof" else repr(tok.value)
        raise SourceError(tok.line, tok.col, f"{message}, found {found}", "parse")


class _ExprParser:
    def __init__(self, stream: TokenStream, scope: Mapping[str, str]):
        self.s = stream
        self.scope = scope

    def parse(self) -> tuple[Expr, str]:
        return self._or()

    def _logic(self, op: str, sub) -> tuple[Expr, str]:
        left, ltype = sub()
        while self.s.at(op):
            tok = self.s.next()
            right, rtype = sub()
            if ltype != BOOL or rtype != BOOL:
                raise SourceError(tok.line, tok.col, f"'{op}' needs bool operands", "type")
            left = Binary(op, left, right)
        return left, ltype

    def _or(self):
        return self._logic("or", self._and)

    def _and(self):
        return self._logic("and", self._cmp)

    def _cmp(self):
        left, ltype = self._sum()
        tok = self.s.peek
        if tok.kind != "op" or tok.value not in CMP_OPS:
            return left, ltype
        self.s.next()
        right, rtype = self._sum()
        if tok.value in ORDER_OPS and (ltype != INT or rtype != INT):
            raise SourceError(tok.line, tok.col, f"'{tok.value}' needs int operands", "type")
        if ltype != rtype:
            raise SourceError(tok.line, tok.col,
                              f"'{tok.value}' compares {ltype} with {rtype}", "type")
        nxt = self.s.peek
        if nxt.kind == "op" and nxt.value in CMP_OPS:
            self.s.fail("comparisons do not chain", nxt)
        return Binary(tok.value, left, right), BOOL

    def _arith(self, ops, sub):
        left, ltype = sub()
        while self.s.peek.kind == "op" and self.s.peek.value in ops:
            tok = self.s.next()
            right, rtype = sub()
            if ltype != INT or rtype != INT:
                raise SourceError(tok.line, tok.col, f"'{tok.value}' needs int operands", "type")
            left = Binary(tok.value, left, right)
        return left, ltype

    def _sum(self):
        return self._arith(("+", "-"), self._prod)

    def _prod(self):
        return self._arith(("*",), self._unary)

    def _unary(self):
        tok = self.s.peek
        if self.s.accept("not"):
            operand, t = self._unary()
            if t != BOOL:
                raise SourceError(tok.line, tok.col, "'not' needs a bool operand", "type")
            return Unary("not", operand), BOOL
        if tok.kind == "op" and tok.value == "-":
            self.s.next()
            operand, t = self._unary()
            if t != INT:
                raise SourceError(tok.line, tok.col, "'-' needs an int operand", "type")
            return Unary("-", operand), INT
        return self._atom()

    def _atom(self):
        tok = self.s.peek
        if tok.kind == "int":
            self.s.next()
            return IntLit(int(tok.value)), INT
        if tok.kind == "ident":
            if tok.value in ("true", "false"):
                self.s.next()
                return BoolLit(tok.value == "true"), BOOL
            if tok.value in EXPR_KEYWORDS:
                self.s.fail("expected an operand")
            self.s.next()
            if tok.value not in self.scope:
                raise SourceError(tok.line, tok.col, f"unknown name {tok.value!r}", "resolve")
            return Ref(tok.value), self.scope[tok.value]
        if self.s.accept("("):
            inner = self._or()
            self.s.expect(")")
            return inner
        self.s.fail("expected an operand")


def parse_expr_tokens(stream: TokenStream, scope: Mapping[str, str]) -> tuple[Expr, str]:
    """Parse an expression from ``stream``, leaving trailing tokens unconsumed."""
    return _ExprParser(stream, scope).parse()


def parse_expr(text: str, scope: Mapping[str, str], expected: str | None = None) -> Expr:
    """Parse and type-check ``text`` against ``scope`` (name -> "int"/"bool").

    >>> parse_expr("change < 0", {"change": "int"})
    Binary(op='<', left=Ref(name='change'), right=IntLit(value=0))
    """
    stream = TokenStream(tokenize(text))
    start = stream.peek
    expr, etype = parse_expr_tokens(stream, scope)
    if stream.peek.kind != "eof":
        stream.fail("unexpected trailing input")
    if expected is not None and etype != expected:
        raise SourceError(start.line, start.col,
                          f"expected a {expected} expression, got {etype}", "type")
    return expr


def type_of(expr: Expr, scope: Mapping[str, str]) -> str:
    """Type of an already-checked expression."""
    if isinstance(expr, IntLit):
        return INT
    if isinstance(expr, BoolLit):
        return BOOL
    if isinstance(expr, Ref):
        return scope[expr.name]
    if isinstance(expr, Unary):
        return BOOL if expr.op == "not" else INT
    return INT if expr.op in ARITH_OPS else BOOL


# --- printing ---------------------------------------------------------------

def _prec(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return _PREC[expr.op]
    if isinstance(expr, Unary):
        return _UNARY_PREC
    return _ATOM_PREC


def to_text(expr: Expr) -> str:
    """Render with the minimum parentheses needed to re-parse to the same tree."""
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, BoolLit):
        return "true" if expr.value else "false"
    if isinstance(expr, Ref):
        return expr.name
    if isinstance(expr, Unary):
        inner = to_text(expr.operand)
        if _prec(expr.operand) < _UNARY_PREC:
            inner = f"({inner})"
        if expr.op == "not":
            return f"not {inner}"
        return f"- {inner}" if inner.startswith("-") else f"-{inner}"
    p = _PREC[expr.op]
    left, right = to_text(expr.left), to_text(expr.right)
    # comparisons are non-associative, everything else associates left
    if _prec(expr.left) < p or (p == 3 and _prec(expr.left) == 3):
        left = f"({left})"
    if _prec(expr.right) <= p:
        right = f"({right})"
    return f"{left} {expr.op} {right}"


# --- evaluation -------------------------------------------------------------

def evaluate(expr: Expr, env: Mapping[str, int | bool]) -> int | bool:
    if isinstance(expr, (IntLit, BoolLit)):
        return expr.value
    if isinstance(expr, Ref):
        return env[expr.name]
    if isinstance(expr, Unary):
        v = evaluate(expr.operand, env)
        return (not v) if expr.op == "not" else -v
    op = expr.op
    if op == "and":
        return evaluate(expr.left, env) and evaluate(expr.right, env)
    if op == "or":
        return evaluate(expr.left, env) or evaluate(expr.right, env)
    a, b = evaluate(expr.left, env), evaluate(expr.right, env)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    if op == "==":
        return a == b
    if op == "!=":
        return a != b
    raise ValueError(f"unknown operator {op!r}")


def atoms(expr: Expr) -> list[Expr]:
    """Atomic conditions: the maximal subterms not built from and/or/not."""
    if isinstance(expr, Binary) and expr.op in LOGIC_OPS:
        return atoms(expr.left) + atoms(expr.right)
    if isinstance(expr, Unary) and expr.op == "not":
        return atoms(expr.operand)
    return [expr]


def names(expr: Expr) -> Iterator[str]:
    if isinstance(expr, Ref):
        yield expr.name
    elif isinstance(expr, Unary):
        yield from names(expr.operand)
    elif isinstance(expr, Binary):
        yield from names(expr.left)
        yield from names(expr.right)
