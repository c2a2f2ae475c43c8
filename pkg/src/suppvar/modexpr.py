"""Module expressions: a small language for modules built functorially from
the defining representation.

Grammar (whitespace insensitive):

    expr := "V(" nat ")" | "triv" | "dual(" expr ")"
          | "tensor(" expr "," expr ")" | "sum(" expr "," expr ")"
          | "sym(" nat "," expr ")" | "ext(" nat "," expr ")"
          | "tw(" expr ["," nat] ")"

"V(n)" is the defining n-dimensional module, "triv" the one-dimensional
trivial module, "tw" the Frobenius twist (default one iteration).  Printing
and parsing round-trip exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb

from .errors import ArityError, DimensionMismatchError, ParseError, ShapeMismatchError, UnknownNodeError


@dataclass(frozen=True)
class Defining:
    n: int


@dataclass(frozen=True)
class Trivial:
    pass


@dataclass(frozen=True)
class Dual:
    arg: object


@dataclass(frozen=True)
class Tensor:
    left: object
    right: object


@dataclass(frozen=True)
class DirectSum:
    left: object
    right: object


@dataclass(frozen=True)
class Sym:
    degree: int
    arg: object


@dataclass(frozen=True)
class Ext:
    degree: int
    arg: object


@dataclass(frozen=True)
class Twist:
    arg: object
    times: int = 1


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|([(),]))")


def _tokenize(text):
    tokens = []
    text = text.rstrip()
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("punct", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {tok[1]!r}", position=tok[2])
        self.i += 1
        return tok

    def nat(self):
        tok = self.take("int")
        return tok[1]

    def expr(self):
        tok = self.peek()
        if tok[0] != "name":
            raise ParseError(f"expected an expression, found {tok[1]!r}", position=tok[2])
        name = tok[1]
        if name == "triv":
            self.take("name")
            return Trivial()
        if name == "V":
            self.take("name")
            self.take("punct", "(")
            n = self.nat()
            self.take("punct", ")")
            if n < 1:
                raise ArityError("V needs a positive dimension", position=tok[2])
            return Defining(n)
        if name == "dual":
            self.take("name")
            self.take("punct", "(")
            inner = self.expr()
            self.take("punct", ")")
            return Dual(inner)
        if name in ("tensor", "sum"):
            self.take("name")
            self.take("punct", "(")
            a = self.expr()
            self.take("punct", ",")
            b = self.expr()
            self.take("punct", ")")
            return Tensor(a, b) if name == "tensor" else DirectSum(a, b)
        if name in ("sym", "ext"):
            self.take("name")
            self.take("punct", "(")
            d = self.nat()
            self.take("punct", ",")
            inner = self.expr()
            self.take("punct", ")")
            return Sym(d, inner) if name == "sym" else Ext(d, inner)
        if name == "tw":
            self.take("name")
            self.take("punct", "(")
            inner = self.expr()
            times = 1
            if self.peek()[:2] == ("punct", ","):
                self.take("punct", ",")
                times = self.nat()
                if times < 1:
                    raise ArityError("tw needs at least one twist", position=tok[2])
            self.take("punct", ")")
            return Twist(inner, times)
        raise UnknownNodeError(f"unknown node {name!r}", position=tok[2])


def parse_module_expr(text: str):
    parser = _Parser(text)
    e = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise ParseError(f"trailing input {tok[1]!r}", position=tok[2])
    validate_expr(e)
    return e


def format_module_expr(e) -> str:
    if isinstance(e, Defining):
        return f"V({e.n})"
    if isinstance(e, Trivial):
        return "triv"
    if isinstance(e, Dual):
        return f"dual({format_module_expr(e.arg)})"
    if isinstance(e, Tensor):
        return f"tensor({format_module_expr(e.left)},{format_module_expr(e.right)})"
    if isinstance(e, DirectSum):
        return f"sum({format_module_expr(e.left)},{format_module_expr(e.right)})"
    if isinstance(e, Sym):
        return f"sym({e.degree},{format_module_expr(e.arg)})"
    if isinstance(e, Ext):
        return f"ext({e.degree},{format_module_expr(e.arg)})"
    if isinstance(e, Twist):
        if e.times == 1:
            return f"tw({format_module_expr(e.arg)})"
        return f"tw({format_module_expr(e.arg)},{e.times})"
    raise UnknownNodeError(f"unknown node {type(e).__name__}")


def dim(e) -> int:
    if isinstance(e, Defining):
        return e.n
    if isinstance(e, Trivial):
        return 1
    if isinstance(e, (Dual, Twist)):
        return dim(e.arg)
    if isinstance(e, Tensor):
        return dim(e.left) * dim(e.right)
    if isinstance(e, DirectSum):
        return dim(e.left) + dim(e.right)
    if isinstance(e, Sym):
        m = dim(e.arg)
        return comb(m + e.degree - 1, e.degree)
    if isinstance(e, Ext):
        return comb(dim(e.arg), e.degree)
    raise UnknownNodeError(f"unknown node {type(e).__name__}")


def leaf_size(e):
    """Size n shared by all Defining leaves, or None if there is none."""
    if isinstance(e, Defining):
        return e.n
    if isinstance(e, Trivial):
        return None
    if isinstance(e, (Dual, Twist, Sym, Ext)):
        return leaf_size(e.arg)
    if isinstance(e, (Tensor, DirectSum)):
        a, b = leaf_size(e.left), leaf_size(e.right)
        if a is not None and b is not None and a != b:
            raise ShapeMismatchError(f"leaves disagree on the group size: {a} vs {b}")
        return a if a is not None else b
    raise UnknownNodeError(f"unknown node {type(e).__name__}")


def validate_expr(e):
    """Structural sanity: leaf sizes agree, degrees in range."""
    leaf_size(e)
    _validate(e)


def _validate(e):
    if isinstance(e, (Defining, Trivial)):
        return
    if isinstance(e, (Dual, Twist)):
        _validate(e.arg)
        return
    if isinstance(e, (Tensor, DirectSum)):
        _validate(e.left)
        _validate(e.right)
        return
    if isinstance(e, Sym):
        if e.degree < 0:
            raise ArityError("sym needs a nonnegative degree")
        _validate(e.arg)
        return
    if isinstance(e, Ext):
        if e.degree < 0:
            raise ArityError("ext needs a nonnegative degree")
        if e.degree > dim(e.arg):
            raise DimensionMismatchError(
                f"ext degree {e.degree} exceeds dimension {dim(e.arg)}")
        _validate(e.arg)
        return
    raise UnknownNodeError(f"unknown node {type(e).__name__}")


def degree_bound(e, p: int) -> int:
    """Upper bound on the total polynomial degree of the evaluated matrix in
    the entries of the input group element.  Conservative for ext, where no
    sharper bound is attempted."""
    if isinstance(e, Defining):
        return 1
    if isinstance(e, Trivial):
        return 0
    if isinstance(e, Dual):
        return degree_bound(e.arg, p)
    if isinstance(e, Tensor):
        return degree_bound(e.left, p) + degree_bound(e.right, p)
    if isinstance(e, DirectSum):
        return max(degree_bound(e.left, p), degree_bound(e.right, p))
    if isinstance(e, (Sym, Ext)):
        return e.degree * degree_bound(e.arg, p)
    if isinstance(e, Twist):
        return p ** e.times * degree_bound(e.arg, p)
    raise UnknownNodeError(f"unknown node {type(e).__name__}")


def required_height(e, p: int) -> int:
    """Least r with p**r > (p-1) * degree_bound: beyond this height the
    higher coefficient operators vanish, so the height-r table already
    determines the support."""
    d = (p - 1) * degree_bound(e, p)
    r = 0
    while p ** r <= d:
        r += 1
    return r
