"""Expression parsing and canonical text for algebra elements and classical polynomials.

Grammar (whitespace insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' '-'? uint)?
    atom   := rational | 'q' | gen | '(' expr ')'
    gen    := ('x' | 'y') '[' uint ',' uint ']'

Unary minus and negative exponents are accepted so canonical forms such as
`1*q^2 + -1*q^-2` read back; a negative exponent needs an invertible scalar
base (a single power of q).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

from qmatrices.algebra import AlgebraElement, check_size, generator, scalar
from qmatrices.coefficients import Q, EvaluationError, LaurentPoly, Rational, normalize_rational
from qmatrices.poisson import CPoly, cpoly_constant, cpoly_generator

Mode = Literal["quantum", "classical"]
_FAMILY: dict[str, str] = {"quantum": "x", "classical": "y"}

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^(),\[\]]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Number:
    value: Rational
    pos: int


@dataclass(frozen=True)
class QSymbol:
    pos: int


@dataclass(frozen=True)
class Gen:
    family: str
    row: int
    col: int
    pos: int


@dataclass(frozen=True)
class Sum:
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Difference:
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Negation:
    operand: "Node"
    pos: int


@dataclass(frozen=True)
class Product:
    factors: tuple["Node", ...]
    pos: int


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int
    pos: int


@dataclass(frozen=True)
class Group:
    inner: "Node"
    pos: int


Node = Union[Number, QSymbol, Gen, Sum, Difference, Negation, Product, Power, Group]


@dataclass(frozen=True)
class ExprAST:
    root: Node
    n: int
    mode: Mode
    text: str


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup or "op"
        tokens.append(_Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int, mode: Mode):
        self.tokens = tokenize(text)
        self.index = 0
        self.n = n
        self.mode = mode

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def _advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, text: str) -> _Token | None:
        if self.current.kind == "op" and self.current.text == text:
            return self._advance()
        return None

    def _expect(self, text: str) -> _Token:
        token = self._accept(text)
        if token is None:
            raise ParseError(f"expected {text!r}, found {self.current.text or 'end of input'!r}", self.current.pos)
        return token

    def _uint(self) -> int:
        token = self.current
        if token.kind != "num" or "/" in token.text:
            raise ParseError(f"expected a nonnegative integer, found {token.text or 'end of input'!r}", token.pos)
        self._advance()
        return int(token.text)

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "eof":
            raise ParseError(f"unexpected {self.current.text!r}", self.current.pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            token = self._accept("+") or self._accept("-")
            if token is None:
                return node
            right = self.term()
            node = Sum(node, right, token.pos) if token.text == "+" else Difference(node, right, token.pos)

    def term(self) -> Node:
        start = self.current.pos
        factors = [self.factor()]
        while self._accept("*"):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors), start)

    def factor(self) -> Node:
        minus = self._accept("-")
        if minus is not None:
            return Negation(self.factor(), minus.pos)
        base = self.atom()
        caret = self._accept("^")
        if caret is None:
            return base
        negative = self._accept("-") is not None
        exponent = self._uint()
        return Power(base, -exponent if negative else exponent, caret.pos)

    def atom(self) -> Node:
        token = self.current
        if token.kind == "num":
            self._advance()
            try:
                value = normalize_rational(Fraction(token.text))
            except ZeroDivisionError:
                raise ParseError("division by zero in rational literal", token.pos) from None
            return Number(value, token.pos)
        if token.kind == "name":
            self._advance()
            if token.text == "q":
                if self.mode != "quantum":
                    raise ParseError("the symbol q is only available in quantum mode", token.pos)
                return QSymbol(token.pos)
            if token.text in ("x", "y"):
                return self._generator(token)
            raise ParseError(f"unknown symbol {token.text!r}", token.pos)
        if token.kind == "op" and token.text == "(":
            self._advance()
            inner = self.expr()
            self._expect(")")
            return Group(inner, token.pos)
        raise ParseError(f"unexpected {token.text or 'end of input'!r}", token.pos)

    def _generator(self, name: _Token) -> Gen:
        expected = _FAMILY[self.mode]
        if name.text != expected:
            raise ParseError(f"generator family {name.text!r} is not allowed in {self.mode} mode (use {expected!r})", name.pos)
        self._expect("[")
        row = self._uint()
        self._expect(",")
        col = self._uint()
        self._expect("]")
        if not (1 <= row <= self.n and 1 <= col <= self.n):
            raise ParseError(f"index {name.text}[{row},{col}] out of range for n={self.n}", name.pos)
        return Gen(name.text, row, col, name.pos)


def parse(text: str, n: int, mode: Mode = "quantum") -> ExprAST:
    check_size(n)
    if mode not in _FAMILY:
        raise ParseError(f"unknown mode {mode!r}", 0)
    return ExprAST(root=_Parser(text, n, mode).parse(), n=n, mode=mode, text=text)


def _constant(value: Rational | LaurentPoly, n: int, mode: Mode) -> AlgebraElement | CPoly:
    if mode == "quantum":
        return scalar(value, n)
    return cpoly_constant(value, n)


def _scalar_part(value: AlgebraElement) -> LaurentPoly | None:
    terms = value.terms
    if set(terms) <= {()}:
        return terms.get((), LaurentPoly())
    return None


def _evaluate(node: Node, n: int, mode: Mode) -> AlgebraElement | CPoly:
    if isinstance(node, Number):
        return _constant(node.value, n, mode)
    if isinstance(node, QSymbol):
        return _constant(Q, n, mode)
    if isinstance(node, Gen):
        if mode == "quantum":
            return generator(node.row, node.col, n)
        return cpoly_generator(node.row, node.col, n)
    if isinstance(node, Group):
        return _evaluate(node.inner, n, mode)
    if isinstance(node, Negation):
        return -_evaluate(node.operand, n, mode)
    if isinstance(node, Sum):
        return _evaluate(node.left, n, mode) + _evaluate(node.right, n, mode)
    if isinstance(node, Difference):
        return _evaluate(node.left, n, mode) - _evaluate(node.right, n, mode)
    if isinstance(node, Product):
        result = _evaluate(node.factors[0], n, mode)
        for factor in node.factors[1:]:
            result = result * _evaluate(factor, n, mode)
        return result
    if isinstance(node, Power):
        base = _evaluate(node.base, n, mode)
        if node.exponent >= 0:
            return base**node.exponent
        lp = _scalar_part(base) if isinstance(base, AlgebraElement) else None
        if lp is None:
            raise ParseError("negative exponents need a scalar power of q as base", node.pos)
        try:
            return scalar(lp**node.exponent, n)
        except EvaluationError:
            raise ParseError(f"{lp.to_text()} is not invertible", node.pos) from None
    raise TypeError(f"unknown node {node!r}")


def eval_expr(ast: ExprAST, mode: Mode | None = None) -> AlgebraElement | CPoly:
    if mode is not None and mode != ast.mode:
        raise ParseError(f"expression was parsed in {ast.mode} mode, not {mode}", 0)
    return _evaluate(ast.root, ast.n, ast.mode)


def evaluate_text(text: str, n: int, mode: Mode = "quantum") -> AlgebraElement | CPoly:
    return eval_expr(parse(text, n, mode))


def format_value(value: AlgebraElement | CPoly | LaurentPoly) -> str:
    return value.to_text()
