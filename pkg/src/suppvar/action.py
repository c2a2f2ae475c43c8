"""Evaluation of module expressions on group elements, and the two nilpotent
action operators attached to a module and a tuple.

A GroupElement carries a group-like polynomial matrix together with its
inverse, so dual modules evaluate by transposing the inverse instead of
inverting a polynomial matrix.

The *global* operator of a module expression at a tuple (B_0, ..., B_{r-1})
sums, over s, the coefficient of T**(p**s) in the evaluated matrix of the
single factor exp(B_s).  The *infinitesimal* operator at height r reads the
coefficient of T**(p**(r-1)) in the evaluated matrix of the full evaluated
tuple, computed mod T**(p**r).  Both are p-nilpotent; that is asserted and a
failure signals a bug, never bad input.

Basis conventions are fixed so serialized operators reproduce exactly:
column j of a matrix holds the image of basis vector j; sym uses
lexicographic monomials (e1**d, e1**(d-1)e2, ...), ext lexicographic wedges,
tensor row-major Kronecker order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product

from .errors import (
    BadHeightError,
    ExponentOutOfCapError,
    FieldMismatchError,
    NilpotenceCheckError,
    NonCommutingError,
    NotGroupLikeError,
    NotInvariantError,
    NotNilpotentError,
    ShapeMismatchError,
    UnknownNodeError,
)
from .linalg import Mat, echelon_span, in_span, is_p_nilpotent
from .modexpr import Defining, DirectSum, Dual, Ext, Sym, Tensor, Trivial, Twist, dim, leaf_size
from .polymat import PolyMatrix, check_group_like, exp_nilpotent
from .tuples import GaTuple, NilTuple, evaluate, evaluate_inverse


@dataclass(frozen=True)
class GroupElement:
    fwd: PolyMatrix
    inv: PolyMatrix

    def __mul__(self, other):
        return GroupElement(self.fwd * other.fwd, other.inv * self.inv)


def exp_group_element(b: Mat, cap: int) -> GroupElement:
    return GroupElement(exp_nilpotent(b, cap), exp_nilpotent(-b, cap))


def tuple_group_element(t: NilTuple, cap: int) -> GroupElement:
    return GroupElement(evaluate(t, cap), evaluate_inverse(t, cap))


def identity_group_element(field, n, cap) -> GroupElement:
    one = PolyMatrix.identity(field, n, cap)
    return GroupElement(one, one)


# -- polynomial scalars (dict exponent -> field element) --------------------

def _ps_add(a, b, field):
    add = field._add
    out = dict(a)
    for e, v in b.items():
        s = add[out.get(e, 0)][v]
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def _ps_mul(a, b, field, cap):
    add, mul = field._add, field._mul
    out = {}
    for e1, v1 in a.items():
        row = mul[v1]
        for e2, v2 in b.items():
            e = e1 + e2
            if e >= cap:
                continue
            s = add[out.get(e, 0)][row[v2]]
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _columns(pm: PolyMatrix):
    """cols[j][i] is the polynomial entry (i, j), sparse."""
    n = pm.n
    cols = [[{} for _ in range(n)] for _ in range(n)]
    for e, m in pm.coeffs.items():
        for i in range(n):
            base = i * n
            for j in range(n):
                v = m.data[base + j]
                if v:
                    cols[j][i][e] = v
    return cols


def _assemble(field, size, cap, entries):
    """entries: dict (row, col) -> polynomial scalar; regroup by exponent."""
    grids = {}
    for (i, j), poly in entries.items():
        for e, v in poly.items():
            grid = grids.setdefault(e, [0] * (size * size))
            grid[i * size + j] = v
    coeffs = {e: Mat(field, size, size, grid) for e, grid in grids.items()}
    return PolyMatrix(field, size, cap, coeffs)


def _sym_power(pm: PolyMatrix, d: int) -> PolyMatrix:
    f, cap, m = pm.field, pm.cap, pm.n
    basis = list(combinations_with_replacement(range(m), d))
    index = {mono: i for i, mono in enumerate(basis)}
    cols = _columns(pm)
    entries = {}
    for cidx, mono in enumerate(basis):
        acc = {(): {0: 1}}
        for j in mono:
            nxt = {}
            for key, poly in acc.items():
                for i in range(m):
                    entry = cols[j][i]
                    if not entry:
                        continue
                    prod = _ps_mul(poly, entry, f, cap)
                    if not prod:
                        continue
                    k2 = tuple(sorted(key + (i,)))
                    nxt[k2] = _ps_add(nxt[k2], prod, f) if k2 in nxt else prod
            acc = nxt
        for key, poly in acc.items():
            entries[(index[key], cidx)] = poly
    return _assemble(f, len(basis), cap, entries)


def _perm_sign(perm):
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _ext_power(pm: PolyMatrix, d: int) -> PolyMatrix:
    f, cap, m = pm.field, pm.cap, pm.n
    basis = list(combinations(range(m), d))
    cols = _columns(pm)
    entries = {}
    for cidx, cset in enumerate(basis):
        for ridx, rset in enumerate(basis):
            det = {}
            for perm in permutations(range(d)):
                poly = {0: 1}
                for t in range(d):
                    entry = cols[cset[t]][rset[perm[t]]]
                    if not entry:
                        poly = {}
                        break
                    poly = _ps_mul(poly, entry, f, cap)
                    if not poly:
                        break
                if not poly:
                    continue
                if _perm_sign(perm) < 0:
                    poly = {e: f.neg(v) for e, v in poly.items()}
                det = _ps_add(det, poly, f)
            if det:
                entries[(ridx, cidx)] = det
    return _assemble(f, len(basis), cap, entries)


def evaluate_functor(e, g: GroupElement) -> GroupElement:
    """Apply the module construction to a group element, coefficients beyond
    the element's cap truncated (exact in k[T]/T**cap)."""
    if isinstance(e, Defining):
        if g.fwd.n != e.n:
            raise ShapeMismatchError(f"group element of size {g.fwd.n}, leaf expects {e.n}")
        return g
    if isinstance(e, Trivial):
        return identity_group_element(g.fwd.field, 1, g.fwd.cap)
    if isinstance(e, Dual):
        h = evaluate_functor(e.arg, g)
        return GroupElement(h.inv.transpose(), h.fwd.transpose())
    if isinstance(e, Tensor):
        a = evaluate_functor(e.left, g)
        b = evaluate_functor(e.right, g)
        return GroupElement(a.fwd.kron(b.fwd), a.inv.kron(b.inv))
    if isinstance(e, DirectSum):
        a = evaluate_functor(e.left, g)
        b = evaluate_functor(e.right, g)
        return GroupElement(a.fwd.block_diag(b.fwd), a.inv.block_diag(b.inv))
    if isinstance(e, Sym):
        h = evaluate_functor(e.arg, g)
        return GroupElement(_sym_power(h.fwd, e.degree), _sym_power(h.inv, e.degree))
    if isinstance(e, Ext):
        h = evaluate_functor(e.arg, g)
        return GroupElement(_ext_power(h.fwd, e.degree), _ext_power(h.inv, e.degree))
    if isinstance(e, Twist):
        h = evaluate_functor(e.arg, g)
        return GroupElement(h.fwd.frobenius_twist(e.times), h.inv.frobenius_twist(e.times))
    raise UnknownNodeError(f"unknown node {type(e).__name__}")


@dataclass(frozen=True)
class NilOperator:
    op: Mat
    source: str


def _check_leaf(e, n):
    size = leaf_size(e)
    if size is not None and size != n:
        raise ShapeMismatchError(f"module over GL_{size}, tuple over GL_{n}")


def action_at(e, t: NilTuple) -> NilOperator:
    """Global operator: sum over s of the T**(p**s) coefficient of the
    evaluated matrix of exp(B_s)."""
    _check_leaf(e, t.n)
    f = t.field
    p = f.p
    nu = Mat.zero(f, dim(e))
    for s, b in enumerate(t.mats):
        if b.is_zero():
            continue
        ge = exp_group_element(b, p ** (s + 1))
        nu = nu + evaluate_functor(e, ge).fwd.coeff_at(p ** s)
    if not is_p_nilpotent(nu):
        raise NilpotenceCheckError("global operator failed the nilpotence assertion")
    return NilOperator(nu, "global")


def infinitesimal_action_at(e, t: NilTuple, r: int) -> NilOperator:
    """Height-r operator: the T**(p**(r-1)) coefficient of the evaluated
    matrix of the whole tuple, computed mod T**(p**r)."""
    if r < 1:
        raise BadHeightError("infinitesimal height must be at least 1")
    if t.height > r:
        raise BadHeightError(f"tuple height {t.height} exceeds {r}")
    _check_leaf(e, t.n)
    f = t.field
    cap = f.p ** r
    ge = tuple_group_element(t, cap)
    op = evaluate_functor(e, ge).fwd.coeff_at(f.p ** (r - 1))
    if not is_p_nilpotent(op):
        raise NilpotenceCheckError("infinitesimal operator failed the nilpotence assertion")
    return NilOperator(op, f"infinitesimal({r})")


class GaModule:
    """Module over the additive group presented by its group-like comodule
    matrix P; the operator u_s is the coefficient of T**(p**s)."""

    __slots__ = ("P", "degree_bound")

    def __init__(self, P: PolyMatrix, validate: bool = True):
        if P.nvars != 1:
            raise ShapeMismatchError("comodule matrix must be univariate")
        if validate and not check_group_like(P):
            raise NotGroupLikeError("comodule matrix is not group-like")
        self.P = P
        self.degree_bound = P.degree_bound()
        ops = [(s, u) for s, u in self._u_items()]
        for s, u in ops:
            if not is_p_nilpotent(u):
                raise NotNilpotentError(f"u_{s} is not p-nilpotent", index=s)
        for a in range(len(ops)):
            for b in range(a + 1, len(ops)):
                if ops[a][1] * ops[b][1] != ops[b][1] * ops[a][1]:
                    raise NonCommutingError(ops[a][0], ops[b][0])

    def _u_items(self):
        p = self.P.field.p
        s = 0
        while p ** s < self.P.cap:
            u = self.P.coeff_at(p ** s)
            if not u.is_zero():
                yield s, u
            s += 1

    @property
    def field(self):
        return self.P.field

    @property
    def dim(self) -> int:
        return self.P.n

    def u_op(self, s: int) -> Mat:
        e = self.field.p ** s
        if e >= self.P.cap:
            return Mat.zero(self.field, self.dim)
        return self.P.coeff_at(e)

    def u_height(self) -> int:
        """One past the index of the last nonzero u operator."""
        return max((s + 1 for s, _ in self._u_items()), default=0)

    def __repr__(self):
        return f"GaModule(dim={self.dim}, degree_bound={self.degree_bound})"


def ga_module_from_tuple(t: NilTuple) -> GaModule:
    """Rational module attached to a tuple: comodule matrix is the evaluated
    group element, with cap p**height so nothing truncates."""
    cap = t.field.p ** t.height
    return GaModule(evaluate(t, cap), validate=False)


def ga_action_at(m: GaModule, a: GaTuple) -> NilOperator:
    """Operator sum over s of a_s**(p**s) u_s."""
    if a.field != m.field:
        raise FieldMismatchError("tuple and module live in different fields")
    f = m.field
    nu = Mat.zero(f, m.dim)
    for s, c in enumerate(a.coeffs):
        if c:
            u = m.u_op(s)
            if not u.is_zero():
                nu = nu + u.scale(f.frobenius(c, s))
    if not is_p_nilpotent(nu):
        raise NilpotenceCheckError("additive-group operator failed the nilpotence assertion")
    return NilOperator(nu, "global")


def v_operators(m: GaModule, jmax: int):
    """Coefficient operators v_j for j = 0..jmax."""
    if jmax >= m.P.cap:
        raise ExponentOutOfCapError(f"jmax {jmax} not below cap {m.P.cap}")
    return [m.P.coeff_at(j) for j in range(jmax + 1)]


def _mat_vec(m: Mat, vec):
    f = m.field
    add, mul = f._add, f._mul
    out = []
    for i in range(m.rows):
        acc = 0
        base = i * m.cols
        for j, v in enumerate(vec):
            if v:
                acc = add[acc][mul[m.data[base + j]][v]]
        out.append(acc)
    return tuple(out)


def submodule_split(m: GaModule, basis):
    """Split along an invariant subspace: returns (restriction, quotient) as
    modules in the echelonized sub-basis and a completed ambient basis."""
    f = m.field
    d = m.dim
    rows = echelon_span(basis, f)
    w = len(rows)
    for e in sorted(m.P.coeffs):
        v = m.P.coeffs[e]
        for b in rows:
            if not in_span(_mat_vec(v, b), rows, f):
                raise NotInvariantError(e)
    cols = [list(b) for b in rows]
    for i in range(d):
        unit = [0] * d
        unit[i] = 1
        if not in_span(unit, echelon_span(cols, f), f):
            cols.append(unit)
    change = Mat(f, d, d, [cols[j][i] for i in range(d) for j in range(d)])
    inv = change.inverse()
    sub_coeffs, quot_coeffs = {}, {}
    for e, mat in m.P.coeffs.items():
        conj = inv * mat * change
        sub_coeffs[e] = Mat(f, w, w, [conj.entry(i, j) for i in range(w) for j in range(w)])
        quot_coeffs[e] = Mat(f, d - w, d - w,
                             [conj.entry(w + i, w + j) for i in range(d - w) for j in range(d - w)])
    cap = m.P.cap
    return (GaModule(PolyMatrix(f, w, cap, sub_coeffs), validate=False),
            GaModule(PolyMatrix(f, d - w, cap, quot_coeffs), validate=False))


def regular_ga_module(field, r: int) -> GaModule:
    """The rank-r truncated polynomial algebra as a module over itself:
    dimension p**r, with u_s acting by multiplication by the s-th generator."""
    if r < 1:
        raise BadHeightError("regular module needs height at least 1")
    p = field.p
    d = p ** r
    monos = list(product(range(p), repeat=r))
    index = {b: i for i, b in enumerate(monos)}
    mats = []
    for s in range(r):
        data = [0] * (d * d)
        for mono, col in index.items():
            if mono[s] + 1 < p:
                bumped = mono[:s] + (mono[s] + 1,) + mono[s + 1:]
                data[index[bumped] * d + col] = 1
        mats.append(Mat(field, d, d, data))
    return ga_module_from_tuple(NilTuple(field, d, mats))
