"""Recursive-descent parser for the surface-definition language.

Grammar (EBNF)::

    file     = { comment | header } surface
    header   = "periodic:" ( "true" | "false" )
    surface  = "(" expr { "," expr } ")" | expr { "," expr }
    expr     = term { ( "+" | "-" ) term }
    term     = unary { ( "*" | "/" ) unary }
    unary    = "-" unary | power
    power    = primary [ "^" [ "-" ] INTEGER ]
    primary  = NUMBER [ "i" ] | "i" | "pi" | "u1" | "u2"
             | FUNC "(" expr ")" | "(" expr ")"
    FUNC     = "exp" | "sin" | "cos" | "sqrt" | "conj"

``-a^2`` is ``-(a^2)`` and ``a+b*c`` is ``a+(b*c)``.  Lines starting with
``#`` are comments.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from ..exceptions import ContactGeomError
from . import dual

FUNCTION_NAMES = frozenset(dual.FUNCTIONS)
VARIABLES = ("u1", "u2")
CONSTANTS = {"pi": math.pi}


class DSLError(ContactGeomError, ValueError):
    pass


class DSLSyntaxError(DSLError):
    def __init__(self, message, line, column, expected=()):
        self.line, self.column, self.expected = line, column, tuple(expected)
        detail = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"line {line}, column {column}: {message}{detail}")


class UnknownIdentifierError(DSLError):
    def __init__(self, name, line, column):
        self.name, self.line, self.column = name, line, column
        super().__init__(f"line {line}, column {column}: unknown identifier {name!r}")


class ComponentCountError(DSLError):
    pass


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: complex


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Const, Var, Neg, BinOp, Pow, Call]


@dataclass(frozen=True)
class SurfaceDefinition:
    components: tuple
    periodic: bool = True


# -- lexer -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # number | ident | op | eof
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        else:
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def error(self, message, expected=()):
        t = self.tok
        where = "end of input" if t.kind == "eof" else repr(t.text)
        raise DSLSyntaxError(f"{message} at {where}", t.line, t.column, expected)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind != "op":
            self.error(f"expected {text!r}", (repr(text),))
        return self.advance()

    def surface(self) -> tuple:
        start = self.pos
        if self.tok.text == "(":
            try:
                self.advance()
                items = self.expr_list()
                self.expect(")")
                if self.tok.kind == "eof" and len(items) > 1:
                    return tuple(items)
            except DSLSyntaxError:
                pass
            self.pos = start
        items = self.expr_list()
        if self.tok.kind != "eof":
            self.error("unexpected token", ("',' ", "operator", "end of input"))
        return tuple(items)

    def expr_list(self):
        items = [self.expr()]
        while self.tok.text == ",":
            self.advance()
            items.append(self.expr())
        return items

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.primary()
        if self.tok.text == "^":
            self.advance()
            sign = 1
            if self.tok.text == "-":
                self.advance()
                sign = -1
            t = self.tok
            if t.kind != "number" or not t.text.isdigit():
                self.error("exponent must be an integer literal", ("INTEGER",))
            self.advance()
            return Pow(base, sign * int(t.text))
        return base

    def primary(self):
        t = self.tok
        if t.kind == "number":
            self.advance()
            if t.text.endswith("i"):
                return Num(complex(0.0, float(t.text[:-1])))
            return Num(complex(float(t.text), 0.0))
        if t.kind == "ident":
            self.advance()
            if t.text == "i":
                return Num(1j)
            if t.text in CONSTANTS:
                return Const(t.text)
            if t.text in VARIABLES:
                return Var(t.text)
            if t.text in FUNCTION_NAMES:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(t.text, arg)
            raise UnknownIdentifierError(t.text, t.line, t.column)
        if t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.error("expected expression", ("number", "identifier", "'('", "'-'"))


def _strip_file(text: str):
    """Blank out comments and header lines (keeping line numbers); read the header."""
    periodic = True
    lines = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if stripped.startswith("#"):
            lines.append("")
            continue
        m = re.fullmatch(r"periodic\s*:\s*(\w+)", stripped)
        if m:
            flag = m.group(1).lower()
            if flag not in ("true", "false"):
                raise DSLSyntaxError(f"bad periodic flag {m.group(1)!r}", len(lines) + 1, 1, ("true", "false"))
            periodic = flag == "true"
            lines.append("")
            continue
        lines.append(raw)
    return "\n".join(lines), periodic


def parse_expression(text: str) -> Expr:
    p = _Parser(tokenize(text))
    node = p.expr()
    if p.tok.kind != "eof":
        p.error("unexpected token", ("operator", "end of input"))
    return node


def parse_surface_file(text: str, n: int | None = None) -> SurfaceDefinition:
    body, periodic = _strip_file(text)
    components = _Parser(tokenize(body)).surface()
    allowed = (n + 1,) if n is not None else (2, 3)
    if len(components) not in allowed:
        want = " or ".join(str(a) for a in allowed)
        raise ComponentCountError(f"surface has {len(components)} components; expected {want}")
    return SurfaceDefinition(components, periodic)


def parse_surface(text: str, n: int | None = None) -> tuple:
    """Parse surface text into a tuple of ``n + 1`` expression trees."""
    return parse_surface_file(text, n).components


# -- serialization -----------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_NEG_PREC, _POW_PREC, _ATOM_PREC = 3, 4, 5


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    if isinstance(node, Pow):
        return _POW_PREC
    return _ATOM_PREC


def _wrap(node, min_prec):
    s = serialize(node)
    return f"({s})" if _prec(node) < min_prec else s


def serialize(node: Expr) -> str:
    """Text that parses back to an identical tree."""
    if isinstance(node, Num):
        if node.value.imag == 0:
            return repr(float(node.value.real))
        if node.value == 1j:
            return "i"
        return f"{float(node.value.imag)!r}i"
    if isinstance(node, (Const, Var)):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({serialize(node.arg)})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _NEG_PREC)
    if isinstance(node, Pow):
        return f"{_wrap(node.base, _ATOM_PREC)}^{node.exponent}"
    p = _PREC[node.op]
    return f"{_wrap(node.left, p)}{node.op}{_wrap(node.right, p + 1)}"


def serialize_surface(components) -> str:
    return ", ".join(serialize(c) for c in components)


# -- evaluation --------------------------------------------------------------

def evaluate_dual(node: Expr, u) -> dual.DualScalar:
    """Value and both first partials of ``node`` at ``u = (u1, u2)``.

    ``u1`` and ``u2`` may be arrays of a common shape.
    """
    u1, u2 = u
    seeds = {
        "u1": dual.DualScalar(u1, 1.0, 0.0),
        "u2": dual.DualScalar(u2, 0.0, 1.0),
    }
    return _eval(node, seeds)


def _eval(node, seeds):
    if isinstance(node, Num):
        return dual.DualScalar.constant(node.value)
    if isinstance(node, Const):
        return dual.DualScalar.constant(CONSTANTS[node.name])
    if isinstance(node, Var):
        return seeds[node.name]
    if isinstance(node, Neg):
        return -_eval(node.operand, seeds)
    if isinstance(node, Pow):
        return _eval(node.base, seeds) ** node.exponent
    if isinstance(node, Call):
        return dual.FUNCTIONS[node.func](_eval(node.arg, seeds))
    left, right = _eval(node.left, seeds), _eval(node.right, seeds)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    return left / right
