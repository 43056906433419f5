"""Recursive-descent parser for warping expressions in the variable x.

Grammar (whitespace ignored):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | 'x' | NAME '(' expr ')' | '(' expr ')'

NAME is one of exp, log, sqrt, sin, cos.  Parsing yields a vectorized
evaluator; sampling it at Chebyshev nodes produces the coefficient vector.
"""

from __future__ import annotations

import re
from typing import Callable, NamedTuple

import numpy as np

from . import chebyshev
from .errors import EvaluationError, ExpressionSyntaxError

FUNCTIONS = {
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "sin": np.sin,
    "cos": np.cos,
}

_NUMBER = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_]+")


class Token(NamedTuple):
    kind: str  # "number" | "name" | "op" | "end"
    text: str
    position: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(Token("number", m.group(), i))
            i = m.end()
            continue
        m = _NAME.match(text, i)
        if m:
            tokens.append(Token("name", m.group(), i))
            i = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append(Token("op", ch, i))
            i += 1
            continue
        raise ExpressionSyntaxError(i, "number, name or operator")
    tokens.append(Token("end", "", len(text)))
    return tokens


Evaluator = Callable[[np.ndarray], np.ndarray]


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, symbol: str):
        tok = self.peek()
        if tok.kind != "op" or tok.text != symbol:
            raise ExpressionSyntaxError(tok.position, repr(symbol))
        return self.take()

    def parse(self) -> Evaluator:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExpressionSyntaxError(tok.position, "operator or end of expression")
        return node

    def expr(self) -> Evaluator:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            lhs = node
            if op == "+":
                node = lambda x, a=lhs, b=rhs: a(x) + b(x)
            else:
                node = lambda x, a=lhs, b=rhs: a(x) - b(x)
        return node

    def term(self) -> Evaluator:
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take().text
            rhs = self.factor()
            lhs = node
            if op == "*":
                node = lambda x, a=lhs, b=rhs: a(x) * b(x)
            else:
                node = lambda x, a=lhs, b=rhs: a(x) / b(x)
        return node

    def factor(self) -> Evaluator:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            inner = self.factor()
            return lambda x, a=inner: -a(x)
        return self.power()

    def power(self) -> Evaluator:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.take()
            exponent = self.factor()  # right associative, unary minus allowed
            return lambda x, a=base, b=exponent: a(x) ** b(x)
        return base

    def atom(self) -> Evaluator:
        tok = self.peek()
        if tok.kind == "number":
            self.take()
            value = float(tok.text)
            return lambda x, v=value: np.full_like(x, v)
        if tok.kind == "name":
            self.take()
            if tok.text == "x":
                return lambda x: x
            func = FUNCTIONS.get(tok.text)
            if func is None:
                raise ExpressionSyntaxError(
                    tok.position, f"'x' or one of {sorted(FUNCTIONS)}"
                )
            self.expect_op("(")
            inner = self.expr()
            self.expect_op(")")
            return lambda x, f=func, a=inner: f(a(x))
        if tok.kind == "op" and tok.text == "(":
            self.take()
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ExpressionSyntaxError(tok.position, "number, 'x', function, '(' or '-'")


def compile_expression(text: str) -> Evaluator:
    """Parse ``text`` into a vectorized evaluator of x-arrays."""
    return _Parser(text).parse()


def parse_expression(text: str, node_count: int = 64) -> np.ndarray:
    """Chebyshev coefficients of the expression sampled at ``node_count`` nodes."""
    evaluator = compile_expression(text)
    nodes = chebyshev.lobatto_nodes(node_count)
    with np.errstate(all="ignore"):
        values = np.asarray(evaluator(nodes), dtype=float)
    if values.shape != nodes.shape:
        values = np.broadcast_to(values, nodes.shape).astype(float)
    if not np.all(np.isfinite(values)):
        bad = nodes[~np.isfinite(values)][0]
        raise EvaluationError(f"expression not finite at x = {bad:.6g}")
    return chebyshev.fit_values(nodes, values)
