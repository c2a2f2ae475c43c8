"""Command-line surface.

Commands emit line-delimited JSON: one record per object, summary record
last, so interrupted runs leave usable partial output.  Output is byte-stable
for a fixed invocation.  Exit codes: 0 success or suite passed, 1 suite
failures, 2 input errors, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors, serialize
from .action import action_at
from .errors import ArityError, BudgetExceededError, NoMaximumError, ParseError
from .field import field
from .linalg import JordanType, jordan_type
from .modexpr import dim as expr_dim
from .modexpr import format_module_expr, parse_module_expr
from .polymat import check_group_like
from .suites import verify_suite
from .tuples import Subalgebra, evaluate
from .variety import (
    enumerate_comm_tuples,
    max_jordan_type,
    non_max_rank_points,
    stratum_leq,
    support_table,
)

_BUILTIN_SUBALGEBRAS = {
    "gl": Subalgebra.full,
    "upper": Subalgebra.upper,
    "sl": Subalgebra.traceless,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="suppvar",
        description="Exact Jordan types, support tables and verification "
                    "suites over small finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("jordan", "Jordan type of one module at one tuple"),
        ("support", "support table of a module over all tuples of a height"),
        ("strata", "dominance strata and non-maximal rank loci of a table"),
        ("verify", "run a named verification suite"),
        ("enumerate", "dump the enumerated commuting nilpotent tuples"),
        ("exp", "print the group element of a tuple, coefficient by coefficient"),
    ]:
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--p", type=int)
        sp.add_argument("--k", type=int, default=1)
        sp.add_argument("--modulus", help="comma-separated coefficients, low degree first")
        sp.add_argument("--n", type=int)
        sp.add_argument("--r", type=int)
        sp.add_argument("--subalgebra", default="gl",
                        help="gl | upper | sl | path to a basis file")
        sp.add_argument("--module", action="append",
                        help="module expression; repeat for suite corpora")
        sp.add_argument("--tuple", dest="tuple_file", help="tuple JSON file")
        sp.add_argument("--suite")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=None)
        sp.add_argument("--budget", type=int, default=None)
        sp.add_argument("--out", help="write records to a file instead of stdout")
        if name == "jordan":
            sp.add_argument("--show-operator", action="store_true")
        if name == "strata":
            sp.add_argument("--leq", help="Jordan type bound, e.g. '2[2]' or '[1]+[3]'")
            sp.add_argument("--j", type=int, help="rank exponent for the non-maximal locus")
        if name == "exp":
            sp.add_argument("--cap", type=int)
    return parser


def _emit(records, out_path):
    lines = [json.dumps(rec, sort_keys=True) for rec in records]
    if out_path:
        with open(out_path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)


def _field_from_args(args):
    if args.p is None:
        raise ArityError("--p is required without a tuple file")
    modulus = None
    if args.modulus:
        modulus = tuple(int(c) for c in args.modulus.split(","))
    return field(args.p, args.k, modulus)


def _load_tuple(args):
    with open(args.tuple_file) as fh:
        obj = json.load(fh)
    t = serialize.niltuple_from_obj(obj)
    if args.p is not None and args.p != t.field.p:
        raise ParseError(f"--p {args.p} conflicts with tuple file p={t.field.p}")
    if args.n is not None and args.n != t.n:
        raise ParseError(f"--n {args.n} conflicts with tuple file n={t.n}")
    return t


def _single_module(args):
    if not args.module or len(args.module) != 1:
        raise ArityError("exactly one --module is required")
    return parse_module_expr(args.module[0])


def _subalgebra(args, fld):
    if args.subalgebra in _BUILTIN_SUBALGEBRAS:
        return _BUILTIN_SUBALGEBRAS[args.subalgebra]()
    with open(args.subalgebra) as fh:
        obj = json.load(fh)
    sub = serialize.subalgebra_from_obj(obj)
    if sub.basis[0].field != fld:
        raise ParseError("subalgebra file field differs from the requested field")
    return sub


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ArityError(f"--{name} is required for this command")


def cmd_jordan(args):
    t = _load_tuple(args)
    e = _single_module(args)
    nu = action_at(e, t).op
    jt = jordan_type(nu)
    p = t.field.p
    jranks = [(nu ** j).rank() for j in range(1, p)]
    record = {
        "command": "jordan",
        "module": format_module_expr(e),
        "dim": expr_dim(e),
        "height": t.height,
        "jordan_type": str(jt),
        "jranks": jranks,
        "free": jt.is_free,
    }
    if args.show_operator:
        record["operator"] = serialize.mat_to_flat(nu)
    _emit([record], args.out)
    return 0


def _table_from_args(args):
    fld = _field_from_args(args)
    _require(args, "n", "r")
    sub = _subalgebra(args, fld)
    e = _single_module(args)
    return support_table(e, fld, args.n, args.r, sub, args.budget), fld, e, sub


def _point_records(tbl):
    records = []
    for i, pc in enumerate(tbl.points):
        records.append({
            "tuple_id": i,
            "mats": serialize.niltuple_mats(pc.tuple),
            "height": pc.tuple.height,
            "jordan_type": str(pc.jt),
            "jranks": list(pc.jranks),
            "free": pc.free,
        })
    return records


def _context_summary(tbl, fld, e, sub, command):
    summary = {
        "summary": True,
        "command": command,
        "module": format_module_expr(e),
        "n": tbl.n,
        "r": tbl.r,
        "subalgebra": sub.kind,
        "dim": tbl.module_dim,
        "points": len(tbl.points),
        "nonfree": sum(1 for pc in tbl.points if not pc.free),
        "height_insufficient": tbl.height_insufficient,
    }
    summary.update(serialize.field_params(fld))
    try:
        summary["max_type"] = str(max_jordan_type(tbl))
        summary["no_maximum_over_fq"] = False
    except NoMaximumError:
        summary["max_type"] = None
        summary["no_maximum_over_fq"] = True
    return summary


def cmd_support(args):
    tbl, fld, e, sub = _table_from_args(args)
    records = _point_records(tbl)
    records.append(_context_summary(tbl, fld, e, sub, "support"))
    _emit(records, args.out)
    return 0


def cmd_strata(args):
    if args.leq is None and args.j is None:
        raise ArityError("strata needs --leq and/or --j")
    tbl, fld, e, sub = _table_from_args(args)
    index = {pc.tuple: i for i, pc in enumerate(tbl.points)}
    records = []
    counts = {}
    if args.leq is not None:
        bound = JordanType.parse(args.leq, fld.p)
        members = stratum_leq(tbl, bound)
        counts["leq"] = len(members)
        for t in members:
            records.append({
                "stratum": "leq",
                "bound": str(bound),
                "tuple_id": index[t],
                "mats": serialize.niltuple_mats(t),
            })
    if args.j is not None:
        members = non_max_rank_points(tbl, args.j)
        counts["non_max_rank"] = len(members)
        for t in members:
            records.append({
                "stratum": "non_max_rank",
                "j": args.j,
                "tuple_id": index[t],
                "mats": serialize.niltuple_mats(t),
            })
    summary = _context_summary(tbl, fld, e, sub, "strata")
    summary.update(counts)
    records.append(summary)
    _emit(records, args.out)
    return 0


def cmd_verify(args):
    if not args.suite:
        raise ArityError("--suite is required")
    fld = _field_from_args(args)
    report = verify_suite(
        args.suite, fld,
        n=args.n if args.n is not None else 2,
        r=args.r if args.r is not None else 1,
        modules=args.module,
        seed=args.seed,
        samples=args.samples,
        budget=args.budget,
    )
    records = [dict(failure, failure=True) for failure in report.failures]
    summary = {
        "summary": True,
        "command": "verify",
        "suite": report.suite,
        "checks": report.checks,
        "failures": len(report.failures),
        "passed": report.passed,
    }
    summary.update(report.params)
    records.append(summary)
    _emit(records, args.out)
    return 0 if report.passed else 1


def cmd_enumerate(args):
    fld = _field_from_args(args)
    _require(args, "n", "r")
    sub = _subalgebra(args, fld)
    tuples = enumerate_comm_tuples(fld, args.n, args.r, sub, args.budget)
    records = []
    for i, t in enumerate(tuples):
        records.append({
            "tuple_id": i,
            "height": t.height,
            "mats": serialize.niltuple_mats(t),
        })
    summary = {"summary": True, "command": "enumerate", "count": len(tuples),
               "n": args.n, "r": args.r, "subalgebra": sub.kind}
    summary.update(serialize.field_params(fld))
    records.append(summary)
    _emit(records, args.out)
    return 0


def cmd_exp(args):
    t = _load_tuple(args)
    cap = args.cap if args.cap is not None else t.field.p ** max(t.height, 1)
    pm = evaluate(t, cap)
    records = []
    for e in pm.exponents():
        records.append({"exp": e, "coeff": serialize.mat_to_flat(pm.coeff_at(e))})
    records.append({
        "summary": True,
        "command": "exp",
        "cap": cap,
        "n": t.n,
        "height": t.height,
        "group_like": check_group_like(pm),
    })
    _emit(records, args.out)
    return 0


_COMMANDS = {
    "jordan": cmd_jordan,
    "support": cmd_support,
    "strata": cmd_strata,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "exp": cmd_exp,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BudgetExceededError as err:
        _emit([{"error": "BudgetExceeded", "message": str(err)}], args.out)
        return 3
    except (errors.Error, OSError, json.JSONDecodeError, ValueError, KeyError) as err:
        _emit([{"error": type(err).__name__, "message": str(err)}], args.out)
        return 2


def entry():  # console-script hook
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
