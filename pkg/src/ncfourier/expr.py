"""A tiny expression language for scalar functions given on the command line.

Grammar (highest precedence first):

    power  binds tighter than unary minus, is right-associative:
           atom '^' unary
    unary  := '-' unary | power
    term   := unary (('*' | '/') unary)*
    expr   := term (('+' | '-') term)*
    atom   := number | 'pi' | variable | function '(' expr ')' | '(' expr ')'

Variables are x, y, z, r; functions are sin, cos, exp, sqrt, abs.  Parse
errors carry the byte offset and what was expected there.  Printing a
parsed tree and re-parsing the output reproduces the same tree (the
printer is a fixpoint of parse-then-print).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EvalDomainError, ExpressionSyntaxError, UnknownIdentifier

VARIABLES = ("x", "y", "z", "r")
FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "abs": np.abs,
}
CONSTANTS = {"pi": math.pi}


# ---------------------------------------------------------------------------
# Syntax tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    offset: int


def _tokenize(source):
    tokens = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            seen_dot = False
            while j < n and (source[j].isdigit() or (source[j] == "." and not seen_dot)):
                seen_dot = seen_dot or source[j] == "."
                j += 1
            if source[i:j] == ".":
                raise ExpressionSyntaxError(i, "a number")
            tokens.append(_Token("num", source[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(_Token("name", source[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        raise ExpressionSyntaxError(i, "a number, identifier, or operator")
    tokens.append(_Token("end", "", n))
    return tokens


# ---------------------------------------------------------------------------
# Recursive-descent parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, source):
        self.tokens = _tokenize(source)
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def _accept(self, kind, text=None):
        tok = self.current
        if tok.kind == kind and (text is None or tok.text == text):
            self.pos += 1
            return tok
        return None

    def parse(self):
        tree = self.expr()
        tok = self.current
        if tok.kind != "end":
            raise ExpressionSyntaxError(tok.offset, "end of input or an operator")
        return tree

    def expr(self):
        node = self.term()
        while True:
            tok = self.current
            if tok.kind == "op" and tok.text in "+-":
                self.pos += 1
                node = BinOp(tok.text, node, self.term())
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            tok = self.current
            if tok.kind == "op" and tok.text in "*/":
                self.pos += 1
                node = BinOp(tok.text, node, self.unary())
            else:
                return node

    def unary(self):
        if self._accept("op", "-"):
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self._accept("op", "^"):
            return BinOp("^", node, self.unary())
        return node

    def atom(self):
        tok = self.current
        if tok.kind == "num":
            self.pos += 1
            return Num(float(tok.text))
        if tok.kind == "name":
            self.pos += 1
            name = tok.text
            if name in FUNCTIONS:
                if not self._accept("op", "("):
                    raise ExpressionSyntaxError(self.current.offset, "'(' after function name")
                arg = self.expr()
                if not self._accept("op", ")"):
                    raise ExpressionSyntaxError(self.current.offset, "')'")
                return Call(name, arg)
            if name in CONSTANTS:
                return Const(name)
            if name in VARIABLES:
                return Var(name)
            raise UnknownIdentifier(tok.offset, name)
        if self._accept("op", "("):
            node = self.expr()
            if not self._accept("op", ")"):
                raise ExpressionSyntaxError(self.current.offset, "')'")
            return node
        raise ExpressionSyntaxError(tok.offset, "a number, identifier, '-' or '('")


def parse(source):
    """Parse a function expression into a syntax tree."""
    return _Parser(source).parse()


# ---------------------------------------------------------------------------
# Printer (canonical form; parse(to_source(t)) == t)
# ---------------------------------------------------------------------------

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_UNARY, _LEVEL_POW, _LEVEL_ATOM = 1, 2, 3, 4, 5


def _node_level(node):
    if isinstance(node, BinOp):
        if node.op in "+-":
            return _LEVEL_ADD
        if node.op in "*/":
            return _LEVEL_MUL
        return _LEVEL_POW
    if isinstance(node, Neg):
        return _LEVEL_UNARY
    return _LEVEL_ATOM


def _fmt(node, min_level):
    level = _node_level(node)
    if isinstance(node, Num):
        text = repr(node.value)
        if "e" in text or "E" in text:
            text = np.format_float_positional(node.value, trim="-")
        if text.endswith(".0"):
            text = text[:-2]
    elif isinstance(node, Const):
        text = node.name
    elif isinstance(node, Var):
        text = node.name
    elif isinstance(node, Call):
        text = f"{node.fn}({_fmt(node.arg, _LEVEL_ADD)})"
    elif isinstance(node, Neg):
        text = f"-{_fmt(node.arg, _LEVEL_UNARY)}"
    elif isinstance(node, BinOp):
        if node.op in "+-":
            text = f"{_fmt(node.left, _LEVEL_ADD)} {node.op} {_fmt(node.right, _LEVEL_MUL)}"
        elif node.op in "*/":
            text = f"{_fmt(node.left, _LEVEL_MUL)}{node.op}{_fmt(node.right, _LEVEL_UNARY)}"
        else:  # right-associative power; exponent may be a unary term
            text = f"{_fmt(node.left, _LEVEL_ATOM)}^{_fmt(node.right, _LEVEL_UNARY)}"
    else:
        raise TypeError(f"not a syntax node: {node!r}")
    if level < min_level:
        return f"({text})"
    return text


def to_source(node):
    """Render a tree back to source with minimal parentheses."""
    return _fmt(node, _LEVEL_ADD)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evaluate(node, env):
    """Evaluate the tree with numpy broadcasting over the variable bindings.

    ``env`` maps variable names to floats or arrays.  Division by zero,
    even roots of negatives, and non-integer powers of negatives raise
    EvalDomainError.
    """
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Var):
        if node.name not in env:
            raise EvalDomainError(f"variable {node.name!r} is not bound")
        return env[node.name]
    if isinstance(node, Call):
        arg = evaluate(node.arg, env)
        if node.fn == "sqrt" and np.any(np.asarray(arg) < 0):
            raise EvalDomainError("sqrt of a negative value")
        with np.errstate(over="raise"):
            try:
                return FUNCTIONS[node.fn](arg)
            except FloatingPointError as exc:
                raise EvalDomainError(f"{node.fn} overflow") from exc
    if isinstance(node, Neg):
        return -evaluate(node.arg, env)
    if isinstance(node, BinOp):
        left = evaluate(node.left, env)
        right = evaluate(node.right, env)
        if node.op == "+":
            return np.add(left, right)
        if node.op == "-":
            return np.subtract(left, right)
        if node.op == "*":
            return np.multiply(left, right)
        if node.op == "/":
            if np.any(np.asarray(right) == 0):
                raise EvalDomainError("division by zero")
            return np.divide(left, right)
        if node.op == "^":
            lneg = np.any(np.asarray(left) < 0)
            rint = np.all(np.asarray(right) == np.round(np.asarray(right)))
            if lneg and not rint:
                raise EvalDomainError("non-integer power of a negative base")
            if np.any((np.asarray(left) == 0) & (np.asarray(right) < 0)):
                raise EvalDomainError("zero raised to a negative power")
            return np.power(left, right)
    raise TypeError(f"not a syntax node: {node!r}")


def compile_radial(source):
    """Compile an expression of r into a vectorized radial function."""
    tree = parse(source)
    return lambda r: np.asarray(evaluate(tree, {"r": np.asarray(r, dtype=float)}), dtype=float)


def compile_cartesian(source, dim):
    """Compile an expression of x, y, z (and r = ||X||) into fn over (N, dim) points."""
    tree = parse(source)
    names = ("x", "y", "z")[:dim]

    def fn(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        env = {name: pts[:, i] for i, name in enumerate(names)}
        env["r"] = np.linalg.norm(pts, axis=1)
        return np.asarray(evaluate(tree, env), dtype=float)

    return fn
