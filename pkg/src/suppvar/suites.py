"""Executable verification suites.

Each suite states one structural law as a pointwise check over an exhaustive
enumeration (or a seeded deterministic sample where sampling is explicit) and
returns a report listing every counterexample found.  An empty failure list
means the law held everywhere on the stated corpus.

    sum_union            freeness of a direct sum is the conjunction of parts
    tensor_intersection  freeness of a tensor product is the disjunction
    ses_two_of_three     in a short exact sequence, two free terms force the third
    twist_shift          twisted action equals the action at the shifted tuple
    sobaje_equivalence   global freeness matches infinitesimal freeness at the
                         reversed tuple
    max_type_agreement   where the infinitesimal Jordan type is table-maximal,
                         the global type at the reversed tuple agrees
    conjugation_stable   Jordan data is invariant under conjugation
    injective_regular    the regular truncated-polynomial module is free at
                         every nonzero scalar tuple
    poly_bounds          coefficient operators vanish past (p-1)d and their
                         (p-1)-st powers vanish past d
    linearization        the scalar-tuple operator equals its reversed-index
                         linear form
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from . import config, serialize
from .action import (
    action_at,
    evaluate_functor,
    exp_group_element,
    ga_action_at,
    ga_module_from_tuple,
    infinitesimal_action_at,
    regular_ga_module,
    submodule_split,
)
from .errors import ArityError, UnknownSuiteError
from .linalg import EQ, LE, Mat, dominance_compare, echelon_span, jordan_type
from .modexpr import DirectSum, Tensor, Twist, degree_bound, format_module_expr, parse_module_expr
from .variety import enumerate_comm_tuples, enumerate_ga_tuples, enumerate_nilpotent


@dataclass
class VerifyReport:
    suite: str
    params: dict
    checks: int
    failures: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _free(op: Mat) -> bool:
    return jordan_type(op).is_free


def _tuple_json(t):
    return serialize.tuple_like_to_jsonable(t)


def _suite_sum_union(fld, n, r, modules, seed, samples, budget):
    tuples = enumerate_comm_tuples(fld, n, r, budget=budget)
    part_free = [[_free(action_at(e, t).op) for t in tuples] for e in modules]
    checks, failures = 0, []
    for i in range(len(modules)):
        for j in range(i, len(modules)):
            e_sum = DirectSum(modules[i], modules[j])
            for idx, t in enumerate(tuples):
                got = _free(action_at(e_sum, t).op)
                want = part_free[i][idx] and part_free[j][idx]
                checks += 1
                if got != want:
                    failures.append({
                        "law": "sum_union",
                        "modules": [format_module_expr(modules[i]),
                                    format_module_expr(modules[j])],
                        "tuple": _tuple_json(t),
                        "free_sum": got,
                        "free_parts": [part_free[i][idx], part_free[j][idx]],
                    })
    return checks, failures


def _suite_tensor_intersection(fld, n, r, modules, seed, samples, budget):
    tuples = enumerate_comm_tuples(fld, n, r, budget=budget)
    part_free = [[_free(action_at(e, t).op) for t in tuples] for e in modules]
    checks, failures = 0, []
    for i in range(len(modules)):
        for j in range(i, len(modules)):
            e_tensor = Tensor(modules[i], modules[j])
            for idx, t in enumerate(tuples):
                got = _free(action_at(e_tensor, t).op)
                want = part_free[i][idx] or part_free[j][idx]
                checks += 1
                if got != want:
                    failures.append({
                        "law": "tensor_intersection",
                        "modules": [format_module_expr(modules[i]),
                                    format_module_expr(modules[j])],
                        "tuple": _tuple_json(t),
                        "free_tensor": got,
                        "free_parts": [part_free[i][idx], part_free[j][idx]],
                    })
    return checks, failures


def _invariant_subspaces(m):
    """Kernels and images of the coefficient operators and of their pairwise
    products; all invariant because the operators commute."""
    ops = [m.P.coeffs[e] for e in sorted(m.P.coeffs) if e != 0]
    cands = []
    for v in ops + [a * b for a in ops for b in ops]:
        for vecs in (v.kernel_basis(), v.image_basis()):
            sig = echelon_span(vecs, m.field)
            if 0 < len(sig) < m.dim and sig not in cands:
                cands.append(sig)
    return cands


def _suite_ses_two_of_three(fld, n, r, modules, seed, samples, budget):
    rng = random.Random(seed)
    tuples = enumerate_comm_tuples(fld, n, r, budget=budget)
    gas = enumerate_ga_tuples(fld, r)
    checks, failures = 0, []
    for t in tuples:
        total = ga_module_from_tuple(t)
        cands = _invariant_subspaces(total)
        if len(cands) > 8:
            cands = rng.sample(cands, 8)
        for basis in cands:
            sub, quot = submodule_split(total, basis)
            for a in gas:
                frees = (_free(ga_action_at(sub, a).op),
                         _free(ga_action_at(total, a).op),
                         _free(ga_action_at(quot, a).op))
                for k in range(3):
                    others = [frees[x] for x in range(3) if x != k]
                    checks += 1
                    if all(others) and not frees[k]:
                        failures.append({
                            "law": "ses_two_of_three",
                            "tuple": _tuple_json(t),
                            "subspace_dim": len(basis),
                            "ga_tuple": _tuple_json(a),
                            "free": list(frees),
                            "violated_term": k,
                        })
    return checks, failures


def _suite_twist_shift(fld, n, r, modules, seed, samples, budget):
    tuples = enumerate_comm_tuples(fld, n, r, budget=budget)
    checks, failures = 0, []
    for e in modules:
        twisted = Twist(e, 1)
        for t in tuples:
            lhs = action_at(twisted, t).op
            shifted = t.dropped(1).frobenius_entrywise()
            rhs = action_at(e, shifted).op
            checks += 1
            if lhs != rhs:
                failures.append({
                    "law": "twist_shift",
                    "module": format_module_expr(e),
                    "tuple": _tuple_json(t),
                    "shifted_tuple": _tuple_json(shifted),
                })
    return checks, failures


def _suite_sobaje_equivalence(fld, n, r, modules, seed, samples, budget):
    tuples = enumerate_comm_tuples(fld, n, r, budget=budget)
    checks, failures = 0, []
    for e in modules:
        for t in tuples:
            g_free = _free(action_at(e, t).op)
            i_free = _free(infinitesimal_action_at(e, t.reversed(r), r).op)
            checks += 1
            if g_free != i_free:
                failures.append({
                    "law": "sobaje_equivalence",
                    "module": format_module_expr(e),
                    "tuple": _tuple_json(t),
                    "global_free": g_free,
                    "infinitesimal_free": i_free,
                })
    return checks, failures


def _suite_max_type_agreement(fld, n, r, modules, seed, samples, budget):
    tuples = enumerate_comm_tuples(fld, n, r, budget=budget)
    checks, failures = 0, []
    for e in modules:
        inf_types = [jordan_type(infinitesimal_action_at(e, t, r).op) for t in tuples]
        observed = []
        for jt in inf_types:
            if jt not in observed:
                observed.append(jt)
        mx = None
        for cand in observed:
            if all(dominance_compare(other, cand) in (LE, EQ) for other in observed):
                mx = cand
                break
        if mx is None:
            continue
        for t, jt in zip(tuples, inf_types):
            if jt != mx:
                continue
            global_jt = jordan_type(action_at(e, t.reversed(r)).op)
            checks += 1
            if global_jt != mx:
                failures.append({
                    "law": "max_type_agreement",
                    "module": format_module_expr(e),
                    "tuple": _tuple_json(t),
                    "infinitesimal_type": str(jt),
                    "global_type": str(global_jt),
                })
    return checks, failures


def random_invertible(fld, n, rng) -> Mat:
    while True:
        m = Mat(fld, n, n, [rng.randrange(fld.q) for _ in range(n * n)])
        if m.rank() == n:
            return m


def _suite_conjugation_stable(fld, n, r, modules, seed, samples, budget):
    rng = random.Random(seed)
    tuples = enumerate_comm_tuples(fld, n, r, budget=budget)
    checks, failures = 0, []
    base = [[jordan_type(action_at(e, t).op) for t in tuples] for e in modules]
    for _ in range(samples):
        g = random_invertible(fld, n, rng)
        for ei, e in enumerate(modules):
            for idx, t in enumerate(tuples):
                jt = jordan_type(action_at(e, t.conjugated(g)).op)
                checks += 1
                if jt != base[ei][idx]:
                    failures.append({
                        "law": "conjugation_stable",
                        "module": format_module_expr(e),
                        "tuple": _tuple_json(t),
                        "conjugator": serialize.mat_to_flat(g),
                        "expected": str(base[ei][idx]),
                        "observed": str(jt),
                    })
    return checks, failures


def _suite_injective_regular(fld, n, r, modules, seed, samples, budget):
    m = regular_ga_module(fld, r)
    checks, failures = 0, []
    for a in enumerate_ga_tuples(fld, r):
        if a.is_zero():
            continue
        checks += 1
        if not _free(ga_action_at(m, a).op):
            failures.append({
                "law": "injective_regular",
                "ga_tuple": _tuple_json(a),
                "dim": m.dim,
            })
    return checks, failures


def _suite_poly_bounds(fld, n, modules, seed, samples, budget, r=None):
    p = fld.p
    checks, failures = 0, []
    for e in modules:
        d = degree_bound(e, p)
        s_zero = 0
        while p ** s_zero <= (p - 1) * d:
            s_zero += 1
        s_power = 0
        while p ** s_power <= d:
            s_power += 1
        cap = p ** s_zero + 1
        saw_nonzero = False
        for b in enumerate_nilpotent(fld, n, budget=budget):
            fwd = evaluate_functor(e, exp_group_element(b, cap)).fwd
            high = fwd.coeff_at(p ** s_zero)
            low = fwd.coeff_at(p ** s_power)
            checks += 2
            if not high.is_zero():
                failures.append({
                    "law": "poly_bounds",
                    "module": format_module_expr(e),
                    "check": f"coefficient at p^{s_zero} must vanish",
                    "matrix": serialize.mat_to_flat(b),
                })
            if not (low ** (p - 1)).is_zero():
                failures.append({
                    "law": "poly_bounds",
                    "module": format_module_expr(e),
                    "check": f"(p-1)-st power of coefficient at p^{s_power} must vanish",
                    "matrix": serialize.mat_to_flat(b),
                })
            if not low.is_zero():
                saw_nonzero = True
        if s_power < s_zero:
            checks += 1
            if not saw_nonzero:
                failures.append({
                    "law": "poly_bounds",
                    "module": format_module_expr(e),
                    "check": f"coefficient at p^{s_power} vanished everywhere, "
                             "bound should be sharp",
                })
    return checks, failures


def _suite_linearization(fld, n, r, modules, seed, samples, budget):
    tuples = enumerate_comm_tuples(fld, n, r, budget=budget)
    gas = enumerate_ga_tuples(fld, r)
    checks, failures = 0, []
    for t in tuples:
        m = ga_module_from_tuple(t)
        for a in gas:
            lhs = ga_action_at(m, a).op
            b = a.reversed(r)
            rhs = Mat.zero(fld, m.dim)
            for i in range(r):
                c = b.coeff(r - 1 - i)
                if c:
                    rhs = rhs + m.u_op(i).scale(fld.frobenius(c, i))
            checks += 1
            if lhs != rhs:
                failures.append({
                    "law": "linearization",
                    "tuple": _tuple_json(t),
                    "ga_tuple": _tuple_json(a),
                })
    return checks, failures


SUITES = {
    "sum_union": _suite_sum_union,
    "tensor_intersection": _suite_tensor_intersection,
    "ses_two_of_three": _suite_ses_two_of_three,
    "twist_shift": _suite_twist_shift,
    "sobaje_equivalence": _suite_sobaje_equivalence,
    "max_type_agreement": _suite_max_type_agreement,
    "conjugation_stable": _suite_conjugation_stable,
    "injective_regular": _suite_injective_regular,
    "poly_bounds": _suite_poly_bounds,
    "linearization": _suite_linearization,
}

_NEED_MODULES = {
    "sum_union", "tensor_intersection", "twist_shift", "sobaje_equivalence",
    "max_type_agreement", "conjugation_stable", "poly_bounds",
}


def verify_suite(name, fld, n=2, r=1, modules=None, seed=0,
                 samples=None, budget=None) -> VerifyReport:
    if name not in SUITES:
        raise UnknownSuiteError(f"unknown suite {name!r}; known: {sorted(SUITES)}")
    modules = [parse_module_expr(m) if isinstance(m, str) else m
               for m in (modules or [])]
    if name in _NEED_MODULES and not modules:
        raise ArityError(f"suite {name} needs at least one module expression")
    if samples is None:
        samples = config.CONJUGATION_SAMPLES
    run = SUITES[name]
    if name == "poly_bounds":
        checks, failures = run(fld=fld, n=n, modules=modules, seed=seed,
                               samples=samples, budget=budget)
    else:
        checks, failures = run(fld=fld, n=n, r=r, modules=modules, seed=seed,
                               samples=samples, budget=budget)
    params = dict(serialize.field_params(fld), n=n, r=r, seed=seed,
                  modules=[format_module_expr(e) for e in modules])
    return VerifyReport(name, params, checks, failures)
