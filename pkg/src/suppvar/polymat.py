"""Matrices with truncated polynomial entries.

A PolyMatrix stores the coefficient matrices of a square-matrix-valued
polynomial, either univariate (entries in k[T]/T**cap, exponent keys are
ints) or bivariate (entries in k[X,Y]/(X**cap, Y**cap), exponent keys are
(i, j) pairs).  Bivariate values exist solely so that the homomorphism
property P(X+Y) = P(X)P(Y) can be checked exactly; there is no general
multivariate ring here.

Truncation discipline: the cap is explicit data carried by every value, and
operations that *could* silently lose coefficients are split in two.
Products and twists compute exactly in the quotient ring k[T]/T**cap, where
dropping exponents >= cap is the quotient map and loses nothing below the
cap.  Substitutions into a caller-supplied cap (substitute_power) raise
CapOverflowError rather than drop a nonzero coefficient.
"""

from __future__ import annotations

from math import comb

from .errors import (
    CapOverflowError,
    ExponentOutOfCapError,
    FieldMismatchError,
    NotNilpotentError,
    ShapeMismatchError,
)
from .linalg import Mat, is_p_nilpotent


class PolyMatrix:
    __slots__ = ("field", "n", "nvars", "cap", "coeffs")

    def __init__(self, field, n, cap, coeffs, nvars=1):
        if cap < 1:
            raise CapOverflowError("cap must be at least 1")
        self.field = field
        self.n = n
        self.nvars = nvars
        self.cap = cap
        clean = {}
        for e, m in coeffs.items():
            if not self._exp_ok(e):
                raise CapOverflowError(f"exponent {e} not below cap {cap}")
            if m.field != field:
                raise FieldMismatchError("coefficient matrix in a different field")
            if m.rows != n or m.cols != n:
                raise ShapeMismatchError("coefficient matrix of wrong size")
            if not m.is_zero():
                clean[e] = m
        self.coeffs = clean

    def _exp_ok(self, e):
        if self.nvars == 1:
            return 0 <= e < self.cap
        return 0 <= e[0] < self.cap and 0 <= e[1] < self.cap

    @classmethod
    def identity(cls, field, n, cap, nvars=1):
        zero = 0 if nvars == 1 else (0, 0)
        return cls(field, n, cap, {zero: Mat.identity(field, n)}, nvars)

    def coeff_at(self, e) -> Mat:
        if not self._exp_ok(e):
            raise ExponentOutOfCapError(f"exponent {e} not below cap {self.cap}")
        return self.coeffs.get(e, Mat.zero(self.field, self.n))

    def exponents(self):
        return sorted(self.coeffs)

    def degree_bound(self) -> int:
        """Least cap holding every stored coefficient (univariate)."""
        return max(self.coeffs, default=0) + 1

    def __mul__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.field != other.field:
            raise FieldMismatchError("operands live in different fields")
        if self.n != other.n or self.nvars != other.nvars:
            raise ShapeMismatchError("size or variable-count mismatch")
        cap = min(self.cap, other.cap)
        out = {}
        for e1, m1 in self.coeffs.items():
            for e2, m2 in other.coeffs.items():
                if self.nvars == 1:
                    e = e1 + e2
                    if e >= cap:
                        continue
                else:
                    e = (e1[0] + e2[0], e1[1] + e2[1])
                    if e[0] >= cap or e[1] >= cap:
                        continue
                prod = m1 * m2
                out[e] = out[e] + prod if e in out else prod
        return PolyMatrix(self.field, self.n, cap, out, self.nvars)

    def transpose(self):
        return PolyMatrix(self.field, self.n, self.cap,
                          {e: m.transpose() for e, m in self.coeffs.items()}, self.nvars)

    def kron(self, other):
        """Kronecker product with polynomial entries (coefficient convolution)."""
        if self.field != other.field or self.nvars != other.nvars:
            raise ShapeMismatchError("kron operands incompatible")
        cap = min(self.cap, other.cap)
        out = {}
        for e1, m1 in self.coeffs.items():
            for e2, m2 in other.coeffs.items():
                if self.nvars == 1:
                    e = e1 + e2
                    if e >= cap:
                        continue
                else:
                    e = (e1[0] + e2[0], e1[1] + e2[1])
                    if e[0] >= cap or e[1] >= cap:
                        continue
                prod = m1.kron(m2)
                out[e] = out[e] + prod if e in out else prod
        return PolyMatrix(self.field, self.n * other.n, cap, out, self.nvars)

    def block_diag(self, other):
        if self.field != other.field or self.nvars != other.nvars:
            raise ShapeMismatchError("block_diag operands incompatible")
        cap = min(self.cap, other.cap)
        exps = set(self.coeffs) | set(other.coeffs)
        out = {}
        for e in exps:
            if not (self._exp_ok(e) and other._exp_ok(e)):
                continue
            a = self.coeffs.get(e, Mat.zero(self.field, self.n))
            b = other.coeffs.get(e, Mat.zero(other.field, other.n))
            out[e] = a.block_diag(b)
        return PolyMatrix(self.field, self.n + other.n, cap, out, self.nvars)

    def frobenius_twist(self, times: int = 1):
        """Entrywise polynomial Frobenius: exponents scaled by p**times and
        entries raised to the p**times, computed in the same k[T]/T**cap.
        Exponents pushed past the cap vanish under the quotient map; they can
        never feed back into coefficients below the cap."""
        step = self.field.p ** times
        out = {}
        for e, m in self.coeffs.items():
            e2 = e * step
            if e2 < self.cap:
                out[e2] = m.frobenius(times)
        return PolyMatrix(self.field, self.n, self.cap, out, self.nvars)

    def substitute_power(self, s: int, new_cap: int):
        """T -> T**(p**s) into a ring of the caller-chosen cap; refuses to
        drop a nonzero coefficient."""
        step = self.field.p ** s
        out = {}
        for e, m in self.coeffs.items():
            e2 = e * step
            if e2 >= new_cap:
                raise CapOverflowError(
                    f"T**{e} maps to T**{e2}, beyond the requested cap {new_cap}")
            out[e2] = m
        return PolyMatrix(self.field, self.n, new_cap, out, self.nvars)

    def substitute_scale(self, alpha: int):
        """T -> alpha*T, multiplying the T**j coefficient by alpha**j."""
        f = self.field
        out = {e: m.scale(f.pow_(alpha, e)) for e, m in self.coeffs.items()}
        return PolyMatrix(f, self.n, self.cap, out, self.nvars)

    def substitute_xy(self, new_cap=None):
        """T -> X + Y by binomial expansion mod p.  With the default cap the
        image of T**m lands inside the (cap, cap) box, so nothing is lost."""
        if self.nvars != 1:
            raise ShapeMismatchError("substitute_xy needs a univariate matrix")
        cap = self.cap if new_cap is None else new_cap
        p = self.field.p
        out = {}
        for m_exp, mat in self.coeffs.items():
            for i in range(m_exp + 1):
                j = m_exp - i
                if i >= cap or j >= cap:
                    raise CapOverflowError(
                        f"(X+Y)**{m_exp} spills out of the ({cap},{cap}) box")
                c = comb(m_exp, i) % p
                if c:
                    term = mat.scale(c)
                    key = (i, j)
                    out[key] = out[key] + term if key in out else term
        return PolyMatrix(self.field, self.n, cap, out, nvars=2)

    def embed_x(self):
        """View a univariate matrix P(T) as the bivariate P(X)."""
        return PolyMatrix(self.field, self.n, self.cap,
                          {(e, 0): m for e, m in self.coeffs.items()}, nvars=2)

    def embed_y(self):
        return PolyMatrix(self.field, self.n, self.cap,
                          {(0, e): m for e, m in self.coeffs.items()}, nvars=2)

    def __eq__(self, other):
        """Structural equality of coefficients; the cap is bookkeeping and is
        deliberately not compared."""
        return (
            isinstance(other, PolyMatrix)
            and self.field == other.field
            and (self.n, self.nvars) == (other.n, other.nvars)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.nvars, frozenset(self.coeffs.items())))

    def __repr__(self):
        terms = ", ".join(f"T^{e}" if self.nvars == 1 else f"X^{e[0]}Y^{e[1]}"
                          for e in self.exponents())
        return f"PolyMatrix({self.field!r}, n={self.n}, cap={self.cap}, terms=[{terms}])"


def exp_nilpotent(a: Mat, cap=None) -> PolyMatrix:
    """Truncated exponential sum of T**i a**i / i! for i < p; a homomorphism
    from the additive group to GL_n whenever a**p == 0."""
    if not is_p_nilpotent(a):
        raise NotNilpotentError("exponential needs a p-nilpotent argument")
    f = a.field
    p = f.p
    if cap is None:
        cap = p
    coeffs = {0: Mat.identity(f, a.rows)}
    term = Mat.identity(f, a.rows)
    for i in range(1, p):
        term = (term * a).scale(f.inv(i % p))
        if term.is_zero():
            break
        if i < cap:
            coeffs[i] = term
    return PolyMatrix(f, a.rows, cap, coeffs)


def check_group_like(pm: PolyMatrix) -> bool:
    """True iff P(0) is the identity and P(X+Y) = P(X)P(Y) coefficient by
    coefficient in the bivariate ring truncated at (cap, cap)."""
    if pm.nvars != 1:
        raise ShapeMismatchError("group-like check needs a univariate matrix")
    if pm.coeff_at(0) != Mat.identity(pm.field, pm.n):
        return False
    return pm.substitute_xy() == pm.embed_x() * pm.embed_y()
