"""Exact support varieties, Jordan types and rank strata over small finite
fields, for modules of the additive group and of matrix groups presented by
commuting nilpotent tuples."""

from .action import (
    GaModule,
    GroupElement,
    NilOperator,
    action_at,
    evaluate_functor,
    exp_group_element,
    ga_action_at,
    ga_module_from_tuple,
    infinitesimal_action_at,
    regular_ga_module,
    submodule_split,
    tuple_group_element,
    v_operators,
)
from .field import Field, field
from .linalg import (
    EQ,
    GE,
    INCOMPARABLE,
    LE,
    JordanType,
    Mat,
    dominance_compare,
    is_p_nilpotent,
    j_rank,
    jordan_type,
)
from .modexpr import (
    Defining,
    DirectSum,
    Dual,
    Ext,
    Sym,
    Tensor,
    Trivial,
    Twist,
    degree_bound,
    dim,
    format_module_expr,
    parse_module_expr,
    required_height,
)
from .polymat import PolyMatrix, check_group_like, exp_nilpotent
from .suites import SUITES, VerifyReport, verify_suite
from .tuples import GaTuple, NilTuple, Subalgebra, evaluate, evaluate_inverse
from .variety import (
    PointClass,
    SupportTable,
    classify_point,
    enumerate_comm_tuples,
    enumerate_ga_tuples,
    enumerate_nilpotent,
    max_jordan_type,
    non_max_rank_points,
    stratum_leq,
    support_table,
)

__version__ = "0.1.0"
