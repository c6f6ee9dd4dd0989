"""Arithmetic expression language for coordinate component functions.

Grammar (standard precedence, left associativity)::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' int)?
    atom   := number | name | '(' expr ')' | func '(' expr ')'

Only integer powers are allowed; fractional powers must be written via
``sqrt``.  Names must be declared coordinates.  Evaluation produces a
:class:`~paracurv.jets.Jet` of the requested order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import DomainError, ParseError, UnknownCoordinate
from .jets import Jet

FUNCTIONS = ("sqrt", "exp", "ln", "sinh", "cosh")


# -- AST ------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Coord:
    name: str
    index: int
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: object
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * /
    left: object
    right: object
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: object
    span: tuple = field(default=None, compare=False)


# -- parser ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            off = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[off]!r}", off)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, coords):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.coords = {name: i for i, name in enumerate(coords)}

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val, off = self.peek()
        if kind == "op" and val == op:
            return self.advance()
        raise ParseError(f"expected {op!r}", off, expected={op})

    def parse(self):
        node = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing token {val!r}", off)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                rhs = self.term()
                node = Bin(val, node, rhs, span=(node.span[0], rhs.span[1]))
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val in "*/":
                self.advance()
                rhs = self.unary()
                node = Bin(val, node, rhs, span=(node.span[0], rhs.span[1]))
            else:
                return node

    def unary(self):
        kind, val, off = self.peek()
        if kind == "op" and val == "-":
            self.advance()
            arg = self.unary()
            return Neg(arg, span=(off, arg.span[1]))
        return self.factor()

    def factor(self):
        node = self.atom()
        kind, val, off = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            nkind, nval, noff = self.peek()
            neg = False
            if nkind == "op" and nval == "-":
                self.advance()
                neg = True
                nkind, nval, noff = self.peek()
            if nkind != "num" or any(c in nval for c in ".eE"):
                raise ParseError("power exponents must be integer literals", noff)
            self.advance()
            exponent = -int(nval) if neg else int(nval)
            return Pow(node, exponent, span=(node.span[0], noff + len(nval)))
        return node

    def atom(self):
        kind, val, off = self.advance()
        if kind == "num":
            return Num(float(val), span=(off, off + len(val)))
        if kind == "name":
            nkind, nval, noff = self.peek()
            if nkind == "op" and nval == "(":
                if val not in FUNCTIONS:
                    raise ParseError(
                        f"unknown function {val!r}", off, expected=set(FUNCTIONS)
                    )
                self.advance()
                arg = self.expr()
                _, _, endoff = self.expect_op(")")
                return Call(val, arg, span=(off, endoff + 1))
            if val not in self.coords:
                raise UnknownCoordinate(val, off)
            return Coord(val, self.coords[val], span=(off, off + len(val)))
        if kind == "op" and val == "(":
            node = self.expr()
            _, _, endoff = self.expect_op(")")
            return type(node)(**{**_fields(node), "span": (off, endoff + 1)})
        raise ParseError(
            f"expected a number, coordinate or '('", off, expected={"atom"}
        )


def _fields(node):
    return {f: getattr(node, f) for f in node.__dataclass_fields__}


def parse(text, coords):
    """Parse expression text over the declared coordinate names."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text, list(coords)).parse()


# -- printing / round trip ---------------------------------------------------


def unparse(ast):
    """Render an AST back to text; re-parsing yields a structurally equal AST."""
    if isinstance(ast, Num):
        return repr(ast.value)
    if isinstance(ast, Coord):
        return ast.name
    if isinstance(ast, Neg):
        return f"-({unparse(ast.arg)})"
    if isinstance(ast, Bin):
        return f"({unparse(ast.left)}){ast.op}({unparse(ast.right)})"
    if isinstance(ast, Pow):
        return f"({unparse(ast.base)})^{ast.exponent}"
    if isinstance(ast, Call):
        return f"{ast.func}({unparse(ast.arg)})"
    raise TypeError(f"not an AST node: {ast!r}")


# -- evaluation ---------------------------------------------------------------


def eval_jet(ast, point, order=3):
    """Evaluate an AST to a Jet at the given point.

    DomainErrors from jet arithmetic are re-raised with the span of the
    offending subexpression attached.
    """
    if isinstance(ast, Num):
        return Jet.constant(ast.value, len(point), order)
    if isinstance(ast, Coord):
        return Jet.coordinate(ast.index, point, order)
    if isinstance(ast, Neg):
        return -eval_jet(ast.arg, point, order)
    if isinstance(ast, Bin):
        left = eval_jet(ast.left, point, order)
        right = eval_jet(ast.right, point, order)
        try:
            if ast.op == "+":
                return left + right
            if ast.op == "-":
                return left - right
            if ast.op == "*":
                return left * right
            return left / right
        except DomainError as e:
            raise DomainError(str(e), value=e.value, span=ast.span) from None
    if isinstance(ast, Pow):
        return eval_jet(ast.base, point, order) ** ast.exponent
    if isinstance(ast, Call):
        arg = eval_jet(ast.arg, point, order)
        try:
            return getattr(arg, ast.func)()
        except DomainError as e:
            raise DomainError(str(e), value=e.value, span=ast.span) from None
    raise TypeError(f"not an AST node: {ast!r}")


# -- symbolic derivative (internal plumbing for embeddings) -------------------


def _num(v):
    return Num(float(v))


def _add(a, b):
    if isinstance(a, Num) and a.value == 0.0:
        return b
    if isinstance(b, Num) and b.value == 0.0:
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return _num(a.value + b.value)
    return Bin("+", a, b)


def _sub(a, b):
    if isinstance(b, Num) and b.value == 0.0:
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return _num(a.value - b.value)
    return Bin("-", a, b)


def _mul(a, b):
    if isinstance(a, Num):
        if a.value == 0.0:
            return _num(0.0)
        if a.value == 1.0:
            return b
    if isinstance(b, Num):
        if b.value == 0.0:
            return _num(0.0)
        if b.value == 1.0:
            return a
    if isinstance(a, Num) and isinstance(b, Num):
        return _num(a.value * b.value)
    return Bin("*", a, b)


def _div(a, b):
    if isinstance(a, Num) and a.value == 0.0:
        return _num(0.0)
    return Bin("/", a, b)


def derivative(ast, index):
    """Exact derivative of an AST with respect to coordinate ``index``.

    Used internally to obtain tangent-basis fields of an immersion at full
    jet order; not part of the public expression language.
    """
    if isinstance(ast, Num):
        return _num(0.0)
    if isinstance(ast, Coord):
        return _num(1.0 if ast.index == index else 0.0)
    if isinstance(ast, Neg):
        return Neg(derivative(ast.arg, index))
    if isinstance(ast, Bin):
        da, db = derivative(ast.left, index), derivative(ast.right, index)
        if ast.op == "+":
            return _add(da, db)
        if ast.op == "-":
            return _sub(da, db)
        if ast.op == "*":
            return _add(_mul(da, ast.right), _mul(ast.left, db))
        return _div(
            _sub(_mul(da, ast.right), _mul(ast.left, db)), Pow(ast.right, 2)
        )
    if isinstance(ast, Pow):
        du = derivative(ast.base, index)
        if ast.exponent == 0:
            return _num(0.0)
        return _mul(_mul(_num(ast.exponent), Pow(ast.base, ast.exponent - 1)), du)
    if isinstance(ast, Call):
        du = derivative(ast.arg, index)
        u = ast.arg
        if ast.func == "sqrt":
            return _div(du, _mul(_num(2.0), Call("sqrt", u)))
        if ast.func == "exp":
            return _mul(Call("exp", u), du)
        if ast.func == "ln":
            return _div(du, u)
        if ast.func == "sinh":
            return _mul(Call("cosh", u), du)
        if ast.func == "cosh":
            return _mul(Call("sinh", u), du)
    raise TypeError(f"not an AST node: {ast!r}")


# -- scalar fields -------------------------------------------------------------


class ScalarField:
    """A coordinate component function, evaluable to a Jet at a point."""

    __slots__ = ("dim", "_ast", "_fn", "source_text")

    def __init__(self, dim, ast=None, fn=None, source_text=None):
        if (ast is None) == (fn is None):
            raise ValueError("exactly one of ast/fn is required")
        self.dim = dim
        self._ast = ast
        self._fn = fn
        self.source_text = source_text

    @classmethod
    def from_expr(cls, text, coords):
        ast = parse(text, coords)
        return cls(len(coords), ast=ast, source_text=text)

    @classmethod
    def from_callable(cls, dim, fn):
        return cls(dim, fn=fn)

    @property
    def ast(self):
        return self._ast

    def __call__(self, point, order=3):
        if self._ast is not None:
            return eval_jet(self._ast, point, order)
        return self._fn(point, order)
