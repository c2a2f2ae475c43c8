"""Stable text encodings shared by the CLI and the verification reports.

Scalars use the canonical field text form (decimal for prime fields,
"c0+c1*g" for extensions).  Matrices serialize as row-major flat lists of
scalar strings.  A tuple file is a single JSON object:

    {"p": 2, "k": 1, "modulus": [0, 1], "n": 2,
     "mats": [["0", "1", "0", "0"], ...]}

A subalgebra file replaces "mats" with "basis" in the same matrix encoding.
"""

from __future__ import annotations

from .errors import ParseError
from .field import Field, field
from .linalg import Mat
from .tuples import GaTuple, NilTuple, Subalgebra


def mat_to_flat(m: Mat):
    f = m.field
    return [f.format_scalar(v) for v in m.data]


def mat_from_flat(fld: Field, n: int, flat) -> Mat:
    if len(flat) != n * n:
        raise ParseError(f"matrix needs {n * n} entries, got {len(flat)}")
    return Mat(fld, n, n, [fld.parse_scalar(str(s)) for s in flat])


def field_params(fld: Field):
    return {"p": fld.p, "k": fld.k, "modulus": list(fld.modulus)}


def field_from_obj(obj) -> Field:
    p = int(obj["p"])
    k = int(obj.get("k", 1))
    modulus = obj.get("modulus")
    return field(p, k, tuple(modulus) if modulus is not None else None)


def niltuple_to_obj(t: NilTuple):
    obj = field_params(t.field)
    obj["n"] = t.n
    obj["mats"] = [mat_to_flat(m) for m in t.mats]
    return obj


def niltuple_from_obj(obj) -> NilTuple:
    fld = field_from_obj(obj)
    n = int(obj["n"])
    mats = [mat_from_flat(fld, n, flat) for flat in obj["mats"]]
    return NilTuple(fld, n, mats)


def niltuple_mats(t: NilTuple):
    """Just the matrices, for embedding in table records."""
    return [mat_to_flat(m) for m in t.mats]


def gatuple_to_list(a: GaTuple):
    f = a.field
    return [f.format_scalar(c) for c in a.coeffs]


def subalgebra_from_obj(obj) -> Subalgebra:
    fld = field_from_obj(obj)
    n = int(obj["n"])
    basis = [mat_from_flat(fld, n, flat) for flat in obj["basis"]]
    return Subalgebra.span(basis)


def tuple_like_to_jsonable(t):
    if isinstance(t, NilTuple):
        return niltuple_mats(t)
    return gatuple_to_list(t)
