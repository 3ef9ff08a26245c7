"""Tiny arithmetic expression language with exact symbolic derivatives.

Grammar (one variable ``x``; precedence ``^`` > unary minus > ``* /`` > ``+ -``):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER | 'x' | 'exp' '(' expr ')' | 'ln' '(' expr ')' | '(' expr ')'

Numbers are decimal literals; scientific notation (``1e-3``) is accepted.
The grammar is deliberately small: powers, exponentials and logarithms are
all the function material the verification targets need, and every
differentiation rule stays individually testable.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParseError

__all__ = [
    "Expr",
    "parse",
    "differentiate",
    "evaluate",
    "eval_array",
    "pretty",
    "contains_var",
]

_LEAF_KINDS = ("const", "var")
_UNARY_KINDS = ("neg", "exp", "ln")
_BINARY_KINDS = ("add", "sub", "mul", "div", "pow")


@dataclass(frozen=True)
class Expr:
    """Immutable expression tree node.

    ``kind`` is one of const | var | add | sub | mul | div | pow | exp |
    ln | neg; ``args`` holds the child expressions (arity fixed by kind)
    and ``value`` is meaningful for constants only.
    """

    kind: str
    args: tuple = field(default=())
    value: float = 0.0

    def __post_init__(self):
        arity = {**{k: 0 for k in _LEAF_KINDS},
                 **{k: 1 for k in _UNARY_KINDS},
                 **{k: 2 for k in _BINARY_KINDS}}
        if self.kind not in arity:
            raise ValueError(f"unknown node kind {self.kind!r}")
        if len(self.args) != arity[self.kind]:
            raise ValueError(f"{self.kind} expects {arity[self.kind]} children, "
                             f"got {len(self.args)}")


VAR = Expr("var")


def const(v: float) -> Expr:
    return Expr("const", value=float(v))


ZERO = const(0.0)
ONE = const(1.0)


def _is_const(e: Expr, v: float | None = None) -> bool:
    return e.kind == "const" and (v is None or e.value == v)


# Smart constructors fold identity elements so derivative trees stay small.
# This is construction hygiene, not a simplifier: no rewriting beyond 0/1.

def add(l: Expr, r: Expr) -> Expr:
    if _is_const(l, 0.0):
        return r
    if _is_const(r, 0.0):
        return l
    return Expr("add", (l, r))


def sub(l: Expr, r: Expr) -> Expr:
    if _is_const(r, 0.0):
        return l
    return Expr("sub", (l, r))


def mul(l: Expr, r: Expr) -> Expr:
    if _is_const(l, 0.0) or _is_const(r, 0.0):
        return ZERO
    if _is_const(l, 1.0):
        return r
    if _is_const(r, 1.0):
        return l
    return Expr("mul", (l, r))


def div(l: Expr, r: Expr) -> Expr:
    if _is_const(l, 0.0):
        return ZERO
    if _is_const(r, 1.0):
        return l
    return Expr("div", (l, r))


def pow_(b: Expr, e: Expr) -> Expr:
    return Expr("pow", (b, e))


def neg(e: Expr) -> Expr:
    return Expr("neg", (e,))


def exp_(e: Expr) -> Expr:
    return Expr("exp", (e,))


def ln_(e: Expr) -> Expr:
    return Expr("ln", (e,))


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------

_NUMBER_RE = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_WS_RE = re.compile(r"\s*")


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def _skip_ws(self):
        self.pos = _WS_RE.match(self.src, self.pos).end()

    def _peek(self) -> str:
        self._skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def _fail(self, message: str, expected: str):
        raise ParseError(self.pos, message, expected)

    def _eat(self, ch: str, expected: str):
        if self._peek() != ch:
            got = self._peek() or "end of input"
            self._fail(f"found {got!r}", expected)
        self.pos += 1

    def parse(self) -> Expr:
        self._skip_ws()
        if self.pos == len(self.src):
            self._fail("empty input", "an expression")
        e = self.expr()
        self._skip_ws()
        if self.pos != len(self.src):
            self._fail(f"trailing input {self.src[self.pos:]!r}", "end of input")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self._peek() in ("+", "-"):
            op = self._peek()
            self.pos += 1
            rhs = self.term()
            e = Expr("add" if op == "+" else "sub", (e, rhs))
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self._peek() in ("*", "/"):
            op = self._peek()
            self.pos += 1
            rhs = self.unary()
            e = Expr("mul" if op == "*" else "div", (e, rhs))
        return e

    def unary(self) -> Expr:
        if self._peek() == "-":
            self.pos += 1
            return neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self._peek() == "^":
            self.pos += 1
            return pow_(base, self.unary())
        return base

    def atom(self) -> Expr:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self._eat(")", "')'")
            return e
        m = _NUMBER_RE.match(self.src, self.pos)
        if m:
            self.pos = m.end()
            return const(float(m.group()))
        m = _IDENT_RE.match(self.src, self.pos)
        if m:
            name = m.group()
            self.pos = m.end()
            if name == "x":
                return VAR
            if name in ("exp", "ln"):
                self._eat("(", f"'(' after {name}")
                e = self.expr()
                self._eat(")", "')'")
                return exp_(e) if name == "exp" else ln_(e)
            self._fail(f"unknown identifier {name!r}", "'x', 'exp' or 'ln'")
        got = ch or "end of input"
        self._fail(f"found {got!r}", "a number, 'x', 'exp(', 'ln(' or '('")


def parse(src: str) -> Expr:
    """Parse expression text into an Expr tree.

    Raises ParseError (with byte offset) on unknown tokens, unbalanced
    parentheses or trailing input.
    """
    if not isinstance(src, str) or not src.strip():
        raise ParseError(0, "empty input", "an expression")
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------

def contains_var(e: Expr) -> bool:
    if e.kind == "var":
        return True
    return any(contains_var(c) for c in e.args)


def differentiate(e: Expr) -> Expr:
    """Exact symbolic derivative d/dx.

    Standard sum/product/quotient/chain rules.  ``a^b`` uses the power rule
    when ``b`` is x-free; otherwise it is rewritten as exp(b*ln(a)) first so
    a single chain-rule path covers the general case.
    """
    k = e.kind
    if k == "const":
        return ZERO
    if k == "var":
        return ONE
    if k == "neg":
        return neg(differentiate(e.args[0]))
    if k == "add":
        return add(differentiate(e.args[0]), differentiate(e.args[1]))
    if k == "sub":
        return sub(differentiate(e.args[0]), differentiate(e.args[1]))
    if k == "mul":
        u, v = e.args
        return add(mul(differentiate(u), v), mul(u, differentiate(v)))
    if k == "div":
        u, v = e.args
        num = sub(mul(differentiate(u), v), mul(u, differentiate(v)))
        return div(num, pow_(v, const(2.0)))
    if k == "exp":
        (u,) = e.args
        return mul(exp_(u), differentiate(u))
    if k == "ln":
        (u,) = e.args
        return div(differentiate(u), u)
    if k == "pow":
        b, x = e.args
        if not contains_var(x):
            # d(b^c) = c * b^(c-1) * b'
            return mul(mul(x, pow_(b, sub(x, ONE))), differentiate(b))
        rewritten = exp_(mul(x, ln_(b)))
        return mul(rewritten, differentiate(mul(x, ln_(b))))
    raise ValueError(f"unknown node kind {k!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _ev(e: Expr, x: float) -> float:
    k = e.kind
    if k == "const":
        return e.value
    if k == "var":
        return x
    if k == "neg":
        return -_ev(e.args[0], x)
    if k in ("add", "sub", "mul", "div", "pow"):
        l = _ev(e.args[0], x)
        r = _ev(e.args[1], x)
        if k == "add":
            return l + r
        if k == "sub":
            return l - r
        if k == "mul":
            return l * r
        if k == "div":
            if r == 0.0:
                raise DomainError(x, "division by zero")
            return l / r
        # pow
        if l < 0.0 and r != math.floor(r):
            raise DomainError(x, f"negative base {l!r} with non-integer exponent")
        if l == 0.0 and r < 0.0:
            raise DomainError(x, "zero base with negative exponent")
        try:
            return l ** r
        except OverflowError:
            raise DomainError(x, "overflow in power") from None
    if k == "exp":
        try:
            return math.exp(_ev(e.args[0], x))
        except OverflowError:
            raise DomainError(x, "overflow in exp") from None
    if k == "ln":
        u = _ev(e.args[0], x)
        if u <= 0.0:
            raise DomainError(x, f"ln of non-positive value {u!r}")
        return math.log(u)
    raise ValueError(f"unknown node kind {k!r}")


def evaluate(e: Expr, x: float) -> float:
    """Evaluate at a positive point; never returns a silent NaN.

    Raises DomainError when x <= 0, when a sub-expression leaves its
    domain, or when the result is not finite.
    """
    x = float(x)
    if not x > 0.0:
        raise DomainError(x, "evaluation point must be positive")
    v = _ev(e, x)
    if not math.isfinite(v):
        raise DomainError(x, f"non-finite result {v!r}")
    return v


def eval_array(e: Expr, xs) -> np.ndarray:
    """Vectorized evaluation; NaN/inf pass through for the caller to screen.

    Used by grid checks and quadrature adapters, which detect non-finite
    samples at the point of consumption and report the offending x.
    """
    xs = np.asarray(xs, dtype=float)

    def rec(n: Expr) -> np.ndarray:
        k = n.kind
        if k == "const":
            return np.full(xs.shape, n.value)
        if k == "var":
            return xs
        if k == "neg":
            return -rec(n.args[0])
        if k == "exp":
            return np.exp(rec(n.args[0]))
        if k == "ln":
            a = rec(n.args[0])
            return np.log(np.where(a > 0.0, a, np.nan))
        l = rec(n.args[0])
        r = rec(n.args[1])
        if k == "add":
            return l + r
        if k == "sub":
            return l - r
        if k == "mul":
            return l * r
        if k == "div":
            return np.where(r != 0.0, l / np.where(r != 0.0, r, 1.0), np.nan)
        return np.power(l, r)

    with np.errstate(all="ignore"):
        return rec(e)


# ---------------------------------------------------------------------------
# Pretty printing (round-trip stable: parse(pretty(t)) == t)
# ---------------------------------------------------------------------------

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4,
         "const": 5, "var": 5, "exp": 5, "ln": 5}


def _fmt_const(v: float) -> str:
    if v < 0.0 or (v == 0.0 and math.copysign(1.0, v) < 0.0):
        return "-" + _fmt_const(-v)
    return repr(v)


def _pp(e: Expr, level: int) -> str:
    k = e.kind
    if k == "const":
        s = _fmt_const(e.value)
        mine = 3 if s.startswith("-") else 5
    elif k == "var":
        s, mine = "x", 5
    elif k in ("exp", "ln"):
        s, mine = f"{k}({_pp(e.args[0], 0)})", 5
    elif k == "neg":
        s, mine = "-" + _pp(e.args[0], 3), 3
    elif k == "pow":
        s, mine = _pp(e.args[0], 5) + "^" + _pp(e.args[1], 3), 4
    else:
        op = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[k]
        mine = _PREC[k]
        s = _pp(e.args[0], mine) + op + _pp(e.args[1], mine + 1)
    if mine < level:
        return "(" + s + ")"
    return s


def pretty(e: Expr) -> str:
    """Render to text that reparses to the identical tree."""
    return _pp(e, 0)
