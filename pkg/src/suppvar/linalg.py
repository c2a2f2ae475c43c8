"""Dense exact matrices over a Field, nilpotent structure and Jordan types.

Matrices are immutable: entries live in a flat row-major tuple of int-encoded
field elements, so Mat values hash and compare structurally.  Row reduction
uses deterministic pivoting (first nonzero entry in column order), which keeps
ranks, kernels and inverses reproducible bit for bit.

A Jordan type is the partition of the dimension of a p-nilpotent operator
into block sizes, recorded as counts c_1..c_p of blocks of each size.  It is
computed from the rank sequence rank(nu**i), never from a canonical-form
reduction: the number of blocks of size >= i equals
rank(nu**(i-1)) - rank(nu**i).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadExponentError,
    DimensionMismatchError,
    FieldMismatchError,
    NotNilpotentError,
    NotSquareError,
    ParseError,
    ShapeMismatchError,
    SingularError,
)

LE = "LE"
GE = "GE"
EQ = "EQ"
INCOMPARABLE = "INCOMPARABLE"


class Mat:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows, cols, data):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = tuple(data)
        if len(self.data) != rows * cols:
            raise ShapeMismatchError(f"expected {rows * cols} entries, got {len(self.data)}")

    @classmethod
    def from_rows(cls, field, rows):
        r = len(rows)
        c = len(rows[0]) if r else 0
        data = []
        for row in rows:
            if len(row) != c:
                raise ShapeMismatchError("ragged rows")
            for e in row:
                e = int(e)
                if not 0 <= e < field.q:
                    raise FieldMismatchError(f"entry {e} outside field of order {field.q}")
                data.append(e)
        return cls(field, r, c, data)

    @classmethod
    def zero(cls, field, rows, cols=None):
        cols = rows if cols is None else cols
        return cls(field, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, field, n):
        data = [0] * (n * n)
        for i in range(n):
            data[i * n + i] = 1
        return cls(field, n, n, data)

    @classmethod
    def unit(cls, field, n, i, j):
        """Matrix unit E_ij (1 in row i, column j, 0 elsewhere)."""
        data = [0] * (n * n)
        data[i * n + j] = 1
        return cls(field, n, n, data)

    def entry(self, i, j):
        return self.data[i * self.cols + j]

    def to_rows(self):
        c = self.cols
        return [list(self.data[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return not any(self.data)

    def _check_same(self, other):
        if self.field != other.field:
            raise FieldMismatchError("operands live in different fields")

    def __add__(self, other):
        self._check_same(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatchError("shape mismatch in add")
        add = self.field._add
        return Mat(self.field, self.rows, self.cols,
                   [add[a][b] for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.field._neg
        return Mat(self.field, self.rows, self.cols, [neg[a] for a in self.data])

    def __mul__(self, other):
        self._check_same(other)
        if self.cols != other.rows:
            raise ShapeMismatchError("inner dimensions differ")
        f = self.field
        add, mul = f._add, f._mul
        n, m, l = self.rows, self.cols, other.cols
        a, b = self.data, other.data
        out = [0] * (n * l)
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            for t, at in enumerate(arow):
                if at:
                    mrow = mul[at]
                    brow = b[t * l:(t + 1) * l]
                    base = i * l
                    for j in range(l):
                        bv = brow[j]
                        if bv:
                            out[base + j] = add[out[base + j]][mrow[bv]]
        return Mat(f, n, l, out)

    def __pow__(self, e):
        if not self.is_square:
            raise NotSquareError("power of a non-square matrix")
        acc = Mat.identity(self.field, self.rows)
        for _ in range(e):
            acc = acc * self
        return acc

    def scale(self, alpha):
        mul = self.field._mul
        row = mul[alpha]
        return Mat(self.field, self.rows, self.cols, [row[a] for a in self.data])

    def transpose(self):
        r, c = self.rows, self.cols
        return Mat(self.field, c, r, [self.data[i * c + j] for j in range(c) for i in range(r)])

    def trace(self):
        if not self.is_square:
            raise NotSquareError("trace of a non-square matrix")
        add = self.field._add
        t = 0
        for i in range(self.rows):
            t = add[t][self.data[i * self.cols + i]]
        return t

    def kron(self, other):
        """Kronecker product in row-major block order."""
        self._check_same(other)
        f = self.field
        mul = f._mul
        r1, c1, r2, c2 = self.rows, self.cols, other.rows, other.cols
        out = [0] * (r1 * r2 * c1 * c2)
        for i1 in range(r1):
            for j1 in range(c1):
                a = self.entry(i1, j1)
                if a:
                    arow = mul[a]
                    for i2 in range(r2):
                        for j2 in range(c2):
                            b = other.entry(i2, j2)
                            if b:
                                out[(i1 * r2 + i2) * (c1 * c2) + j1 * c2 + j2] = arow[b]
        return Mat(f, r1 * r2, c1 * c2, out)

    def block_diag(self, other):
        self._check_same(other)
        r, c = self.rows + other.rows, self.cols + other.cols
        out = [0] * (r * c)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i * c + j] = self.entry(i, j)
        for i in range(other.rows):
            for j in range(other.cols):
                out[(self.rows + i) * c + self.cols + j] = other.entry(i, j)
        return Mat(self.field, r, c, out)

    def frobenius(self, times: int = 1):
        """Entrywise field Frobenius (each entry raised to the p**times)."""
        f = self.field
        return Mat(f, self.rows, self.cols, [f.frobenius(a, times) for a in self.data])

    def _echelon(self):
        """Row echelon form; returns (rows as lists, pivot column list)."""
        f = self.field
        add, mul, neg, inv = f._add, f._mul, f._neg, f._inv
        rows = [list(self.data[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]
        pivots = []
        rank = 0
        for col in range(self.cols):
            sel = None
            for i in range(rank, len(rows)):
                if rows[i][col]:
                    sel = i
                    break
            if sel is None:
                continue
            rows[rank], rows[sel] = rows[sel], rows[rank]
            piv = inv[rows[rank][col]]
            prow = mul[piv]
            rows[rank] = [prow[v] for v in rows[rank]]
            for i in range(len(rows)):
                if i != rank and rows[i][col]:
                    c = neg[rows[i][col]]
                    crow = mul[c]
                    ri, rr = rows[i], rows[rank]
                    rows[i] = [add[ri[j]][crow[rr[j]]] for j in range(self.cols)]
            pivots.append(col)
            rank += 1
        return rows, pivots

    def rank(self):
        return len(self._echelon()[1])

    def kernel_basis(self):
        """Basis of the right kernel, as coordinate tuples, deterministic."""
        rows, pivots = self._echelon()
        free = [j for j in range(self.cols) if j not in pivots]
        f = self.field
        basis = []
        for j in free:
            v = [0] * self.cols
            v[j] = 1
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(rows[r][j])
            basis.append(tuple(v))
        return basis

    def image_basis(self):
        """Pivot columns of the matrix, spanning the column space."""
        _, pivots = self._echelon()
        return [tuple(self.entry(i, j) for i in range(self.rows)) for j in pivots]

    def inverse(self):
        if not self.is_square:
            raise NotSquareError("inverse of a non-square matrix")
        n = self.rows
        aug = Mat(self.field, n, 2 * n,
                  [self.entry(i, j) if j < n else int(j - n == i)
                   for i in range(n) for j in range(2 * n)])
        rows, pivots = aug._echelon()
        if pivots[:n] != list(range(n)):
            raise SingularError("matrix is singular")
        return Mat(self.field, n, n, [rows[i][n + j] for i in range(n) for j in range(n)])

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Mat({self.field!r}, {self.to_rows()})"


def echelon_span(vectors, field):
    """Canonical (reduced row echelon) basis of the span of coordinate
    vectors; usable as a hashable subspace signature."""
    if not vectors:
        return ()
    m = Mat.from_rows(field, [list(v) for v in vectors])
    rows, pivots = m._echelon()
    return tuple(tuple(rows[i]) for i in range(len(pivots)))


def in_span(vector, span_rows, field):
    """Membership of a coordinate vector in an echelon_span result."""
    v = list(vector)
    for row in span_rows:
        pc = next(j for j, e in enumerate(row) if e)
        if v[pc]:
            c = field.neg(v[pc])
            v = [field.add(v[j], field.mul(c, row[j])) for j in range(len(v))]
    return not any(v)


def is_p_nilpotent(m: Mat) -> bool:
    """True iff m**p == 0 over its field of characteristic p."""
    if not m.is_square:
        raise NotSquareError("nilpotency is only defined for square matrices")
    acc = m
    for _ in range(m.field.p - 1):
        if acc.is_zero():
            return True
        acc = acc * m
    return acc.is_zero()


@dataclass(frozen=True)
class JordanType:
    """Counts c_1..c_p of Jordan blocks of each size for a p-nilpotent
    operator; counts[i-1] is the number of blocks of size i."""

    p: int
    counts: tuple

    def __post_init__(self):
        if len(self.counts) != self.p:
            raise DimensionMismatchError("need exactly p block counts")
        if any(c < 0 for c in self.counts):
            raise DimensionMismatchError("block counts must be nonnegative")

    @property
    def dim(self) -> int:
        return sum(c * (i + 1) for i, c in enumerate(self.counts))

    @property
    def is_free(self) -> bool:
        """All blocks of size p, i.e. the operator acts freely on k[u]/u**p."""
        return all(c == 0 for c in self.counts[:-1])

    def blocks(self):
        out = []
        for i in range(self.p, 0, -1):
            out.extend([i] * self.counts[i - 1])
        return out

    def tail_sums(self):
        """T_j = sum over i >= j of i * c_i, for j = 1..p."""
        out = []
        acc = 0
        for i in range(self.p, 0, -1):
            acc += i * self.counts[i - 1]
            out.append(acc)
        out.reverse()
        return out

    def __str__(self):
        parts = []
        for i, c in enumerate(self.counts, start=1):
            if c:
                parts.append(f"[{i}]" if c == 1 else f"{c}[{i}]")
        return "+".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str, p: int) -> "JordanType":
        counts = [0] * p
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls(p, tuple(counts))
        for part in text.split("+"):
            if "[" not in part or not part.endswith("]"):
                raise ParseError(f"bad Jordan type term {part!r}")
            head, size = part[:-1].split("[")
            c = int(head) if head else 1
            i = int(size)
            if not 1 <= i <= p:
                raise ParseError(f"block size {i} outside 1..{p}")
            counts[i - 1] += c
        return cls(p, tuple(counts))


def jordan_type(nu: Mat) -> JordanType:
    """Jordan type of a p-nilpotent operator from its rank sequence."""
    if not is_p_nilpotent(nu):
        raise NotNilpotentError("operator is not p-nilpotent")
    p = nu.field.p
    ranks = [nu.rows]
    acc = Mat.identity(nu.field, nu.rows)
    for _ in range(p):
        acc = acc * nu
        ranks.append(acc.rank())
    # blocks_ge[i] = number of blocks of size >= i
    blocks_ge = [ranks[i - 1] - ranks[i] for i in range(1, p + 1)] + [0]
    counts = tuple(blocks_ge[i] - blocks_ge[i + 1] for i in range(p))
    return JordanType(p, counts)


def j_rank(nu: Mat, j: int) -> int:
    """rank(nu**j) for 1 <= j < p."""
    if not 1 <= j < nu.field.p:
        raise BadExponentError(f"j must satisfy 1 <= j < {nu.field.p}")
    if not is_p_nilpotent(nu):
        raise NotNilpotentError("operator is not p-nilpotent")
    return (nu ** j).rank()


def dominance_compare(a: JordanType, b: JordanType) -> str:
    """Dominance order via tail sums: a <= b iff every T_j(a) <= T_j(b)."""
    if a.p != b.p or a.dim != b.dim:
        raise DimensionMismatchError("Jordan types must share p and dimension")
    ta, tb = a.tail_sums(), b.tail_sums()
    le = all(x <= y for x, y in zip(ta, tb))
    ge = all(x >= y for x, y in zip(ta, tb))
    if le and ge:
        return EQ
    if le:
        return LE
    if ge:
        return GE
    return INCOMPARABLE
