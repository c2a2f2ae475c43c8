"""Finite tuples of pairwise-commuting p-nilpotent matrices.

A NilTuple (B_0, ..., B_{r-1}) encodes a 1-parameter subgroup of GL_n: the
product of the factors exp(B_s) evaluated at T**(p**s).  Tuples are kept in
canonical form with trailing zero matrices trimmed, so structural equality is
meaningful; the zero tuple has height 0.

A GaTuple is the scalar analogue (a_0, ..., a_{r-1}) encoding the additive
group endomorphism T -> sum of a_s T**(p**s).

Both carry the index gymnastics the rest of the package builds on:
truncation, dropping leading entries, reversal up to a height, scaling,
conjugation and Frobenius pre/post-composition.
"""

from __future__ import annotations

from .errors import (
    BadHeightError,
    FieldMismatchError,
    NonCommutingError,
    NotNilpotentError,
    ShapeMismatchError,
)
from .linalg import Mat, echelon_span, in_span, is_p_nilpotent
from .polymat import PolyMatrix


class NilTuple:
    __slots__ = ("field", "n", "mats")

    def __init__(self, field, n, mats):
        mats = list(mats)
        for s, m in enumerate(mats):
            if m.field != field:
                raise FieldMismatchError(f"entry {s} lives in a different field")
            if m.rows != n or m.cols != n:
                raise ShapeMismatchError(f"entry {s} is not {n}x{n}")
            if not is_p_nilpotent(m):
                raise NotNilpotentError(f"entry {s} is not p-nilpotent", index=s)
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if mats[i] * mats[j] != mats[j] * mats[i]:
                    raise NonCommutingError(i, j)
        while mats and mats[-1].is_zero():
            mats.pop()
        self.field = field
        self.n = n
        self.mats = tuple(mats)

    @property
    def height(self) -> int:
        return len(self.mats)

    def is_zero(self) -> bool:
        return not self.mats

    def mat(self, s: int) -> Mat:
        """Entry B_s, the zero matrix beyond the height."""
        return self.mats[s] if s < len(self.mats) else Mat.zero(self.field, self.n)

    def truncated(self, r: int) -> "NilTuple":
        """Keep entries with index < r."""
        return NilTuple(self.field, self.n, self.mats[:r])

    def dropped(self, c: int) -> "NilTuple":
        """Drop the first c entries: (B_c, ..., B_{r-1})."""
        return NilTuple(self.field, self.n, self.mats[c:])

    def reversed(self, r: int) -> "NilTuple":
        """Pad with zeros up to length r, then reverse the order."""
        if r < self.height:
            raise BadHeightError(f"reversal height {r} below tuple height {self.height}")
        padded = [self.mat(s) for s in range(r)]
        return NilTuple(self.field, self.n, padded[::-1])

    def scaled(self, alpha: int) -> "NilTuple":
        """Precompose with multiplication by alpha: B_s -> alpha**(p**s) B_s."""
        f = self.field
        return NilTuple(f, self.n,
                        [m.scale(f.frobenius(alpha, s)) for s, m in enumerate(self.mats)])

    def conjugated(self, g: Mat) -> "NilTuple":
        ginv = g.inverse()
        return NilTuple(self.field, self.n, [g * m * ginv for m in self.mats])

    def precompose_frobenius(self, times: int = 1) -> "NilTuple":
        """Prepend zero matrices; the evaluation picks up T -> T**(p**times)."""
        zero = Mat.zero(self.field, self.n)
        return NilTuple(self.field, self.n, (zero,) * times + self.mats)

    def postcompose_frobenius(self) -> "NilTuple":
        """Shift right and raise every entry to the p-th power entrywise."""
        zero = Mat.zero(self.field, self.n)
        return NilTuple(self.field, self.n, (zero,) + tuple(m.frobenius() for m in self.mats))

    def frobenius_entrywise(self, times: int = 1) -> "NilTuple":
        return NilTuple(self.field, self.n, [m.frobenius(times) for m in self.mats])

    def __eq__(self, other):
        return (
            isinstance(other, NilTuple)
            and self.field == other.field
            and (self.n, self.mats) == (other.n, other.mats)
        )

    def __hash__(self):
        return hash((self.n, self.mats))

    def __repr__(self):
        return f"NilTuple({self.field!r}, n={self.n}, height={self.height})"


def evaluate(t: NilTuple, cap: int) -> PolyMatrix:
    """Group element of the tuple: product over s of exp(B_s) at T**(p**s),
    multiplied in index order in k[T]/T**cap."""
    acc = PolyMatrix.identity(t.field, t.n, cap)
    for s, b in enumerate(t.mats):
        acc = acc * _exp_factor(b, s, cap)
    return acc


def evaluate_inverse(t: NilTuple, cap: int) -> PolyMatrix:
    """Inverse group element: negated exponentials multiplied in reverse."""
    acc = PolyMatrix.identity(t.field, t.n, cap)
    for s in range(t.height - 1, -1, -1):
        acc = acc * _exp_factor(-t.mats[s], s, cap)
    return acc


def _exp_factor(b: Mat, s: int, cap: int) -> PolyMatrix:
    """exp(b) with T -> T**(p**s), directly in k[T]/T**cap."""
    f = b.field
    p = f.p
    step = p ** s
    coeffs = {0: Mat.identity(f, b.rows)}
    term = Mat.identity(f, b.rows)
    for i in range(1, p):
        term = (term * b).scale(f.inv(i))
        if term.is_zero():
            break
        if i * step < cap:
            coeffs[i * step] = term
    return PolyMatrix(f, b.rows, cap, coeffs)


class GaTuple:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = [int(c) for c in coeffs]
        for c in coeffs:
            if not 0 <= c < field.q:
                raise FieldMismatchError(f"coefficient {c} outside field of order {field.q}")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @property
    def height(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, s: int) -> int:
        return self.coeffs[s] if s < len(self.coeffs) else 0

    def truncated(self, r: int) -> "GaTuple":
        return GaTuple(self.field, self.coeffs[:r])

    def dropped(self, c: int) -> "GaTuple":
        return GaTuple(self.field, self.coeffs[c:])

    def reversed(self, r: int) -> "GaTuple":
        if r < self.height:
            raise BadHeightError(f"reversal height {r} below tuple height {self.height}")
        padded = [self.coeff(s) for s in range(r)]
        return GaTuple(self.field, padded[::-1])

    def scaled(self, alpha: int) -> "GaTuple":
        f = self.field
        return GaTuple(f, [f.mul(c, f.frobenius(alpha, s)) for s, c in enumerate(self.coeffs)])

    def __eq__(self, other):
        return (
            isinstance(other, GaTuple)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"GaTuple({self.field!r}, {list(self.coeffs)})"


class Subalgebra:
    """Linear subspace of gl_n used to restrict enumeration; membership is
    linear only, no bracket or exponential-closure condition is checked.
    Whether the span really comes from a matrix subgroup with a well-behaved
    exponential is an assumption supplied by the caller."""

    FULL = "gl"
    UPPER = "upper"
    TRACELESS = "sl"
    SPAN = "span"

    __slots__ = ("kind", "basis", "_span")

    def __init__(self, kind, basis=None, field=None, n=None):
        self.kind = kind
        self.basis = None
        self._span = None
        if kind == self.SPAN:
            if not basis:
                raise ShapeMismatchError("span subalgebra needs a basis")
            self.basis = tuple(basis)
            f = basis[0].field
            self._span = echelon_span([m.data for m in basis], f)

    @classmethod
    def full(cls):
        return cls(cls.FULL)

    @classmethod
    def upper(cls):
        return cls(cls.UPPER)

    @classmethod
    def traceless(cls):
        return cls(cls.TRACELESS)

    @classmethod
    def span(cls, basis):
        return cls(cls.SPAN, basis=basis)

    def contains(self, m: Mat) -> bool:
        if self.kind == self.FULL:
            return True
        if self.kind == self.UPPER:
            return all(m.entry(i, j) == 0 for i in range(m.rows) for j in range(i + 1))
        if self.kind == self.TRACELESS:
            return m.trace() == 0
        return in_span(m.data, self._span, m.field)

    def contains_tuple(self, t: NilTuple) -> bool:
        return all(self.contains(m) for m in t.mats)

    def __repr__(self):
        return f"Subalgebra({self.kind})"
