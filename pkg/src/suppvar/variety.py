"""Exhaustive point enumeration and support tables over a finite field.

Everything here is an F_q shadow of a geometric object: "support" means the
set of enumerated tuples whose operator has some Jordan block of size < p,
and "maximal rank" means the maximum over the enumerated points, which can
understate the generic value over an algebraic closure.  Reports therefore
label maxima as F_q-maxima, and max_jordan_type raises NoMaximumError when
the observed Jordan types have no dominance maximum; enlarge_field gives the
doubling heuristic for that situation.

Enumeration order is deterministic everywhere: field elements in coordinate
lexicographic order, matrix entries row-major, tuples lexicographic with the
zero tuple first, so tables diff cleanly across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import config
from .action import GaModule, action_at, ga_action_at
from .errors import BadExponentError, BudgetExceededError, DimensionMismatchError, NoMaximumError
from .field import Field, field
from .linalg import EQ, LE, JordanType, Mat, dominance_compare, is_p_nilpotent, jordan_type
from .modexpr import dim as expr_dim
from .modexpr import required_height
from .tuples import GaTuple, NilTuple, Subalgebra


def enumerate_nilpotent(fld: Field, n: int, sub: Subalgebra | None = None,
                        budget: int | None = None):
    """All p-nilpotent matrices of the subalgebra, zero matrix first."""
    sub = sub or Subalgebra.full()
    budget = budget or config.DEFAULT_BUDGET
    elems = fld.elements()
    q = fld.q
    out = []
    if sub.kind == Subalgebra.UPPER:
        free = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if q ** len(free) > budget:
            raise BudgetExceededError(f"{q ** len(free)} candidates exceed budget {budget}")
        for combo in product(elems, repeat=len(free)):
            data = [0] * (n * n)
            for (i, j), v in zip(free, combo):
                data[i * n + j] = v
            m = Mat(fld, n, n, data)
            if is_p_nilpotent(m):
                out.append(m)
        out.sort(key=lambda m: _data_key(m, fld))
        return out
    if sub.kind == Subalgebra.SPAN:
        span_basis = [Mat(fld, n, n, row) for row in _echelon_rows(sub, fld)]
        if q ** len(span_basis) > budget:
            raise BudgetExceededError(f"{q ** len(span_basis)} candidates exceed budget {budget}")
        for combo in product(elems, repeat=len(span_basis)):
            m = Mat.zero(fld, n)
            for c, b in zip(combo, span_basis):
                if c:
                    m = m + b.scale(c)
            if is_p_nilpotent(m):
                out.append(m)
        out.sort(key=lambda m: _data_key(m, fld))
        return out
    if q ** (n * n) > budget:
        raise BudgetExceededError(f"{q ** (n * n)} candidates exceed budget {budget}")
    for combo in product(elems, repeat=n * n):
        m = Mat(fld, n, n, combo)
        if sub.contains(m) and is_p_nilpotent(m):
            out.append(m)
    return out


def _echelon_rows(sub: Subalgebra, fld: Field):
    from .linalg import echelon_span
    return echelon_span([m.data for m in sub.basis], fld)


def _data_key(m: Mat, fld: Field):
    order = {x: i for i, x in enumerate(fld.elements())}
    return tuple(order[v] for v in m.data)


def enumerate_comm_tuples(fld: Field, n: int, r: int, sub: Subalgebra | None = None,
                          budget: int | None = None):
    """All length-r tuples of pairwise-commuting nilpotents in the
    subalgebra (then trimmed), zero tuple first, lexicographic order."""
    budget = budget or config.DEFAULT_BUDGET
    nilpotents = enumerate_nilpotent(fld, n, sub, budget)
    if len(nilpotents) ** r > budget:
        raise BudgetExceededError(
            f"{len(nilpotents)} nilpotents to the power {r} exceeds budget {budget}")
    out = []

    def extend(prefix):
        if len(prefix) == r:
            out.append(NilTuple(fld, n, prefix))
            return
        for cand in nilpotents:
            if all(cand * b == b * cand for b in prefix):
                extend(prefix + [cand])

    extend([])
    return out


def enumerate_ga_tuples(fld: Field, r: int):
    """All q**r scalar tuples of height <= r (trimmed), zero tuple first."""
    return [GaTuple(fld, combo) for combo in product(fld.elements(), repeat=r)]


@dataclass(frozen=True)
class PointClass:
    tuple: object
    jt: JordanType
    jranks: tuple
    free: bool


@dataclass
class SupportTable:
    module: object
    field: Field
    n: int
    r: int
    subalgebra: Subalgebra
    points: list
    height_insufficient: bool = False

    @property
    def module_dim(self) -> int:
        if isinstance(self.module, GaModule):
            return self.module.dim
        return expr_dim(self.module)

    def nonfree_points(self):
        return [pc.tuple for pc in self.points if not pc.free]


def classify_point(module, t) -> PointClass:
    """Jordan type, j-rank vector and freeness of the operator of a module at
    one tuple."""
    if isinstance(module, GaModule):
        nu = ga_action_at(module, t).op
    else:
        nu = action_at(module, t).op
    jt = jordan_type(nu)
    p = nu.field.p
    jranks = []
    acc = nu
    for _ in range(1, p):
        jranks.append(acc.rank())
        acc = acc * nu
    return PointClass(t, jt, tuple(jranks), jt.is_free)


def support_table(e, fld: Field, n: int, r: int, sub: Subalgebra | None = None,
                  budget: int | None = None) -> SupportTable:
    sub = sub or Subalgebra.full()
    tuples = enumerate_comm_tuples(fld, n, r, sub, budget)
    points = [classify_point(e, t) for t in tuples]
    insufficient = not isinstance(e, GaModule) and r < required_height(e, fld.p)
    return SupportTable(e, fld, n, r, sub, points, insufficient)


def ga_support_table(m: GaModule, r: int) -> SupportTable:
    tuples = enumerate_ga_tuples(m.field, r)
    points = [classify_point(m, a) for a in tuples]
    insufficient = m.degree_bound > m.field.p ** r
    return SupportTable(m, m.field, m.dim, r, Subalgebra.full(), points, insufficient)


def non_max_rank_points(tbl: SupportTable, j: int):
    """Zero tuple plus every point whose j-rank falls below the F_q-maximum."""
    p = tbl.field.p
    if not 1 <= j < p:
        raise BadExponentError(f"j must satisfy 1 <= j < {p}")
    mx = max(pc.jranks[j - 1] for pc in tbl.points)
    return [pc.tuple for pc in tbl.points
            if pc.tuple.is_zero() or pc.jranks[j - 1] < mx]


def stratum_leq(tbl: SupportTable, c: JordanType):
    """Points whose Jordan type is dominated by c."""
    if c.dim != tbl.module_dim:
        raise DimensionMismatchError(
            f"stratum type has dimension {c.dim}, module has {tbl.module_dim}")
    return [pc.tuple for pc in tbl.points if dominance_compare(pc.jt, c) in (LE, EQ)]


def max_jordan_type(tbl: SupportTable) -> JordanType:
    """The dominance maximum of the observed Jordan types, when one exists
    among the enumerated F_q points."""
    observed = []
    for pc in tbl.points:
        if pc.jt not in observed:
            observed.append(pc.jt)
    for cand in observed:
        if all(dominance_compare(other, cand) in (LE, EQ) for other in observed):
            return cand
    raise NoMaximumError("observed Jordan types have no dominance maximum over F_q")


def enlarge_field(fld: Field) -> Field:
    """Heuristic escalation k -> 2k for tables whose maximum is inconclusive
    over the current field; still an F_q computation, just a bigger q."""
    return field(fld.p, 2 * fld.k)


def max_jordan_type_escalating(e, fld: Field, n: int, r: int,
                               sub: Subalgebra | None = None,
                               budget: int | None = None, doublings: int = 1):
    """max_jordan_type with up to `doublings` rounds of field enlargement;
    returns (jordan_type, field_used)."""
    current = fld
    for attempt in range(doublings + 1):
        tbl = support_table(e, current, n, r, sub, budget)
        try:
            return max_jordan_type(tbl), current
        except NoMaximumError:
            if attempt == doublings:
                raise
            current = enlarge_field(current)
    raise NoMaximumError("unreachable")  # pragma: no cover
