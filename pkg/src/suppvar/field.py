"""Exact arithmetic in small finite fields GF(p**k).

Field elements are plain ints in range(p**k).  The int encodes the coordinate
vector (c0, ..., c_{k-1}) of the element in the basis 1, g, ..., g**(k-1),
where g is the residue of X modulo the field modulus, in little-endian base p:

    x  =  c0 + c1*p + ... + c_{k-1}*p**(k-1)

so that 0 and 1 are the additive and multiplicative identities and the prime
subfield occupies 0..p-1.  The canonical *enumeration* order is lexicographic
on coordinate vectors (c0 compared first), produced by Field.elements(); it
differs from int order once k > 1.

All arithmetic goes through tables built once per field.  Field orders are
capped (config.MAX_FIELD_ORDER) so the tables stay tiny.

The modulus is a monic irreducible polynomial stored as a low-degree-first
coefficient tuple of length k+1.  When no modulus is given, the scan order of
smallest_irreducible picks a deterministic one, so serialized data reproduces
across runs.  For k == 1 the modulus is the degenerate polynomial X.
"""

from __future__ import annotations

import functools
import re

from . import config
from .errors import (
    BadExponentError,
    BudgetExceededError,
    DegreeMismatchError,
    NotIrreducibleError,
    NotPrimeError,
    ParseError,
)


def is_prime(n: int) -> bool:
    """Deterministic trial division, plenty for the capped characteristic."""
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# Polynomials over F_p below are little-endian int lists, not necessarily
# trimmed; only used while building field tables.

def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_rem(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [c % p for c in a[:dm]] + [0] * max(0, dm - len(a))


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] != 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for t in range(p ** d):
            div = [(t // p ** j) % p for j in range(d)] + [1]
            if not any(_poly_rem(modulus, div, p)):
                return False
    return True


def smallest_irreducible(p: int, k: int):
    """First monic irreducible of degree k in the deterministic scan order
    (low coefficients taken as base-p digits of an increasing counter)."""
    if k == 1:
        return (0, 1)
    for t in range(p ** k):
        cand = tuple((t // p ** j) % p for j in range(k)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise NotIrreducibleError(f"no irreducible of degree {k} over F_{p}")  # pragma: no cover


_TERM_RE = re.compile(r"^(\d+)(?:\*g(?:\^(\d+))?)?$")


class Field:
    """GF(p**k) with table-driven arithmetic on int-encoded elements."""

    __slots__ = ("p", "k", "q", "modulus", "_add", "_mul", "_neg", "_inv", "_frob")

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if p > config.MAX_PRIME:
            raise BudgetExceededError(f"characteristic {p} exceeds cap {config.MAX_PRIME}")
        if k < 1:
            raise DegreeMismatchError(f"extension degree must be >= 1, got {k}")
        q = p ** k
        if q > config.MAX_FIELD_ORDER:
            raise BudgetExceededError(f"field order {q} exceeds cap {config.MAX_FIELD_ORDER}")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise DegreeMismatchError(f"modulus must be monic of degree {k}")
            if k == 1:
                if modulus != (0, 1):
                    raise DegreeMismatchError("for k = 1 the modulus must be X")
            elif not is_irreducible(modulus, p):
                raise NotIrreducibleError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, k, q, m = self.p, self.k, self.q, self.modulus
        coords = [tuple((x // p ** j) % p for j in range(k)) for x in range(q)]

        def encode(poly):
            return sum((poly[j] if j < len(poly) else 0) * p ** j for j in range(k))

        self._add = [[encode([(a[j] + b[j]) % p for j in range(k)]) for b in coords] for a in coords]
        self._neg = [encode([(-a[j]) % p for j in range(k)]) for a in coords]
        self._mul = [
            [encode(_poly_rem(_poly_mul(list(a), list(b), p), list(m), p)) for b in coords]
            for a in coords
        ]
        inv = [0] * q
        for x in range(1, q):
            row = self._mul[x]
            inv[x] = row.index(1)
        self._inv = inv
        frob = [x for x in range(q)]
        for x in range(q):
            y = x
            for _ in range(p - 1):
                y = self._mul[y][x]
            frob[x] = y
        self._frob = frob

    # -- arithmetic ---------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._add[x][self._neg[y]]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[x]

    def pow_(self, x: int, e: int) -> int:
        """x**e for a nonnegative integer exponent."""
        if e < 0:
            raise BadExponentError("exponent must be nonnegative")
        acc, base = 1, x
        while e:
            if e & 1:
                acc = self._mul[acc][base]
            base = self._mul[base][base]
            e >>= 1
        return acc

    def frobenius(self, x: int, times: int = 1) -> int:
        """x**(p**times); a field automorphism, identity on the prime subfield."""
        if times < 0:
            raise BadExponentError("frobenius iterations must be nonnegative")
        for _ in range(times % self.k):
            x = self._frob[x]
        return x

    # -- enumeration and encoding -------------------------------------------

    def elements(self):
        """All q elements ordered lexicographically by coordinate vector,
        zero first."""
        p, k = self.p, self.k
        out = []
        for t in range(self.q):
            # big-endian digits of t give the lex-ordered coordinate vector
            cs = tuple((t // p ** (k - 1 - j)) % p for j in range(k))
            out.append(self.from_coords(cs))
        return out

    def coords(self, x: int):
        p = self.p
        return tuple((x // p ** j) % p for j in range(self.k))

    def from_coords(self, cs) -> int:
        p = self.p
        if len(cs) != self.k:
            raise DegreeMismatchError(f"expected {self.k} coordinates, got {len(cs)}")
        return sum((int(c) % p) * p ** j for j, c in enumerate(cs))

    def format_scalar(self, x: int) -> str:
        cs = self.coords(x)
        if self.k == 1:
            return str(cs[0])
        parts = [str(cs[0])]
        for j in range(1, self.k):
            parts.append(f"{cs[j]}*g" if j == 1 else f"{cs[j]}*g^{j}")
        return "+".join(parts)

    def parse_scalar(self, text: str) -> int:
        cs = [0] * self.k
        for term in text.replace(" ", "").split("+"):
            m = _TERM_RE.match(term)
            if not m:
                raise ParseError(f"bad scalar term {term!r}")
            c = int(m.group(1))
            j = 0
            if "*g" in term:
                j = int(m.group(2)) if m.group(2) else 1
            if j >= self.k:
                raise ParseError(f"term {term!r} exceeds extension degree {self.k}")
            cs[j] = (cs[j] + c) % self.p
        return self.from_coords(cs)

    # -- value semantics ------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}; {list(self.modulus)})"


@functools.lru_cache(maxsize=None)
def field(p: int, k: int = 1, modulus=None) -> Field:
    """Cached field constructor; modulus, if given, must be a tuple."""
    return Field(p, k, modulus)
