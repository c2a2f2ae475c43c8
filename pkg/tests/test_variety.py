import pytest

from suppvar import errors, field
from suppvar.action import ga_module_from_tuple, infinitesimal_action_at, action_at
from suppvar.linalg import JordanType, Mat, jordan_type
from suppvar.modexpr import Defining, Sym, parse_module_expr
from suppvar.tuples import NilTuple, Subalgebra
from suppvar.variety import (
    classify_point,
    enumerate_comm_tuples,
    enumerate_ga_tuples,
    enumerate_nilpotent,
    max_jordan_type,
    max_jordan_type_escalating,
    non_max_rank_points,
    stratum_leq,
    support_table,
)

F2 = field(2)
F3 = field(3)


class TestEnumerateNilpotent:
    def test_f2_n2_full(self):
        nil = enumerate_nilpotent(F2, 2)
        assert len(nil) == 4
        assert nil[0].is_zero()
        expected = {
            Mat.zero(F2, 2),
            Mat.unit(F2, 2, 0, 1),
            Mat.unit(F2, 2, 1, 0),
            Mat.from_rows(F2, [[1, 1], [1, 1]]),
        }
        assert set(nil) == expected

    def test_f3_n2_full_count(self):
        # 2x2 nilpotents over F_q: trace 0 and det 0, q^2 of them
        assert len(enumerate_nilpotent(F3, 2)) == 9

    def test_strictly_upper_has_q_elements(self):
        for fld in (F2, F3, field(2, 2)):
            assert len(enumerate_nilpotent(fld, 2, Subalgebra.upper())) == fld.q

    def test_traceless_f2(self):
        nil = enumerate_nilpotent(F2, 2, Subalgebra.traceless())
        assert all(m.trace() == 0 for m in nil)
        assert len(nil) == 4  # every 2x2 nilpotent has trace 0

    def test_span(self):
        nil = enumerate_nilpotent(F3, 2, Subalgebra.span([Mat.unit(F3, 2, 0, 1)]))
        assert len(nil) == 3

    def test_budget(self):
        with pytest.raises(errors.BudgetExceededError):
            enumerate_nilpotent(F3, 3, budget=100)


class TestEnumerateTuples:
    def test_f2_n2_r2(self):
        tuples = enumerate_comm_tuples(F2, 2, 2)
        assert len(tuples) == 10
        assert tuples[0].is_zero()

    def test_r1_matches_nilpotent_count(self):
        assert len(enumerate_comm_tuples(F3, 2, 1)) == len(enumerate_nilpotent(F3, 2))

    def test_f2_n2_r3(self):
        # nonzero 2x2 nilpotents over F_2 commute only with 0 and themselves,
        # so length-3 tuples take entries in {0, X}: 1 + 3*(2^3 - 1) = 22
        tuples = enumerate_comm_tuples(F2, 2, 3)
        assert len(tuples) == 22
        for t in tuples:
            nonzero = {m for m in t.mats if not m.is_zero()}
            assert len(nonzero) <= 1

    def test_pairwise_commutation_holds(self):
        for t in enumerate_comm_tuples(F3, 2, 2):
            for a in t.mats:
                for b in t.mats:
                    assert a * b == b * a

    def test_ga_tuples(self):
        gas = enumerate_ga_tuples(F3, 2)
        assert len(gas) == 9
        assert gas[0].is_zero()


class TestClassify:
    def test_steinberg_point(self):
        pc = classify_point(parse_module_expr("sym(2,V(2))"),
                            NilTuple(F3, 2, [Mat.unit(F3, 2, 0, 1)]))
        assert str(pc.jt) == "[3]" and pc.free
        assert pc.jranks == (2, 1)

    def test_zero_tuple(self):
        pc = classify_point(parse_module_expr("sym(2,V(2))"), NilTuple(F3, 2, []))
        assert str(pc.jt) == "3[1]" and not pc.free

    def test_defining_at_unit(self):
        pc = classify_point(Defining(2), NilTuple(F2, 2, [Mat.unit(F2, 2, 0, 1)]))
        assert str(pc.jt) == "[2]" and pc.free

    def test_jranks_match_closed_form(self):
        e = parse_module_expr("sym(2,V(2))")
        for t in enumerate_comm_tuples(F3, 2, 2):
            pc = classify_point(e, t)
            for j in range(1, 3):
                expected = sum(c * (i - j)
                               for i, c in enumerate(pc.jt.counts, start=1) if i > j)
                assert pc.jranks[j - 1] == expected

    def test_ga_module_point(self):
        m = ga_module_from_tuple(NilTuple(F2, 2, [Mat.unit(F2, 2, 0, 1)]))
        for a in enumerate_ga_tuples(F2, 1):
            pc = classify_point(m, a)
            assert pc.free == (not a.is_zero())


class TestSupportTable:
    def test_steinberg_two(self):
        tbl = support_table(parse_module_expr("sym(3,V(2))"), F2, 2, 2)
        assert len(tbl.points) == 10
        nonfree = tbl.nonfree_points()
        assert len(nonfree) == 1 and nonfree[0].is_zero()
        assert not tbl.height_insufficient

    def test_trivial_module_nowhere_free(self):
        tbl = support_table(parse_module_expr("triv"), F2, 2, 1)
        assert all(not pc.free for pc in tbl.points)

    def test_defining_free_off_zero(self):
        tbl = support_table(parse_module_expr("V(2)"), F2, 2, 1)
        assert len(tbl.points) == 4
        assert [pc.free for pc in tbl.points].count(False) == 1

    def test_height_warning(self):
        tbl = support_table(parse_module_expr("sym(2,V(2))"), F3, 2, 1)
        assert tbl.height_insufficient  # needs r = 2 by the degree oracle


class TestStrata:
    def test_non_max_rank_steinberg(self):
        tbl = support_table(parse_module_expr("sym(2,V(2))"), F3, 2, 1)
        pts = non_max_rank_points(tbl, 1)
        assert len(pts) == 1 and pts[0].is_zero()

    def test_non_max_rank_trivial_degenerate(self):
        tbl = support_table(parse_module_expr("triv"), F2, 2, 1)
        pts = non_max_rank_points(tbl, 1)
        assert len(pts) == 1 and pts[0].is_zero()

    def test_non_max_rank_sum_with_trivial(self):
        tbl = support_table(parse_module_expr("sum(triv,V(2))"), F2, 2, 1)
        pts = non_max_rank_points(tbl, 1)
        assert len(pts) == 1 and pts[0].is_zero()

    def test_bad_exponent(self):
        tbl = support_table(parse_module_expr("V(2)"), F2, 2, 1)
        with pytest.raises(errors.BadExponentError):
            non_max_rank_points(tbl, 2)

    def test_stratum_minimal_type(self):
        tbl = support_table(parse_module_expr("V(2)"), F2, 2, 1)
        pts = stratum_leq(tbl, JordanType(2, (2, 0)))
        assert len(pts) == 1 and pts[0].is_zero()

    def test_stratum_maximal_type_catches_all(self):
        tbl = support_table(parse_module_expr("V(2)"), F2, 2, 1)
        assert len(stratum_leq(tbl, JordanType(2, (0, 1)))) == len(tbl.points)

    def test_stratum_steinberg_two(self):
        tbl = support_table(parse_module_expr("sym(3,V(2))"), F2, 2, 2)
        pts = stratum_leq(tbl, JordanType.parse("[2]+2[1]", 2))
        assert len(pts) == 1 and pts[0].is_zero()

    def test_dimension_mismatch(self):
        tbl = support_table(parse_module_expr("V(2)"), F2, 2, 1)
        with pytest.raises(errors.DimensionMismatchError):
            stratum_leq(tbl, JordanType(2, (1, 1)))


class TestMaxType:
    def test_steinberg_one(self):
        tbl = support_table(parse_module_expr("sym(2,V(2))"), F3, 2, 1)
        assert str(max_jordan_type(tbl)) == "[3]"

    def test_defining(self):
        tbl = support_table(parse_module_expr("V(2)"), F2, 2, 1)
        assert str(max_jordan_type(tbl)) == "[2]"

    def test_trivial(self):
        tbl = support_table(parse_module_expr("triv"), F2, 2, 1)
        assert str(max_jordan_type(tbl)) == "[1]"

    def test_maximum_dominates_everything(self):
        from suppvar.linalg import dominance_compare, LE, EQ
        tbl = support_table(parse_module_expr("sym(3,V(2))"), F2, 2, 2)
        mx = max_jordan_type(tbl)
        for pc in tbl.points:
            assert dominance_compare(pc.jt, mx) in (LE, EQ)

    def test_escalation_returns_same_field_when_max_exists(self):
        jt, fld = max_jordan_type_escalating(parse_module_expr("V(2)"), F2, 2, 1)
        assert fld == F2 and str(jt) == "[2]"

    def test_no_maximum_reported_on_incomparable_types(self):
        from suppvar.variety import PointClass, SupportTable
        zero = NilTuple(field(5), 2, [])
        incomparable = [JordanType.parse("2[3]", 5), JordanType.parse("[1]+[5]", 5)]
        tbl = SupportTable(parse_module_expr("V(2)"), field(5), 2, 1, Subalgebra.full(),
                           [PointClass(zero, jt, (0, 0, 0, 0), False)
                            for jt in incomparable])
        with pytest.raises(errors.NoMaximumError):
            max_jordan_type(tbl)

    def test_enlarge_field_doubles_degree(self):
        from suppvar.variety import enlarge_field
        assert enlarge_field(F2) == field(2, 2)
        assert enlarge_field(field(3, 2)).q == 81


class TestNonMaxRankContainment:
    def test_subset_of_support_with_equality_iff_free_point_exists(self):
        # the non-maximal rank locus sits inside the support, with equality
        # exactly when some point acts with all blocks of size p
        for fld, module, r in [(F2, "V(2)", 1), (F2, "sym(3,V(2))", 2),
                               (F3, "sym(2,V(2))", 1), (F2, "triv", 1),
                               (F3, "sum(triv,V(2))", 1)]:
            tbl = support_table(parse_module_expr(module), fld, 2, r)
            nonfree = set(tbl.nonfree_points())
            has_free_point = len(nonfree) < len(tbl.points)
            for j in range(1, fld.p):
                nonmax = set(non_max_rank_points(tbl, j))
                assert nonmax <= nonfree | {t for t in nonmax if t.is_zero()}
                if has_free_point:
                    assert nonmax == nonfree
                else:
                    assert nonmax < nonfree


class TestHeightSliceConsistency:
    def test_nonfree_at_height_2_is_drop_preimage(self):
        # infinitesimal support at height r+1 is the preimage under dropping
        # the leading entry of the height-r support (module of degree < p^r)
        e = Defining(2)
        level1 = {}
        for t in enumerate_comm_tuples(F2, 2, 1):
            level1[t] = jordan_type(infinitesimal_action_at(e, t, 1).op).is_free
        for t in enumerate_comm_tuples(F2, 2, 2):
            free2 = jordan_type(infinitesimal_action_at(e, t, 2).op).is_free
            assert free2 == level1[t.dropped(1)]


class TestScaleStability:
    def test_freeness_and_type_invariant_under_scaling(self):
        # over F_p and GF(p^2) the scaled operator is a scalar multiple
        for fld, module in [(field(2, 2), "sym(3,V(2))"), (field(3, 2), "V(2)"),
                            (F3, "sym(2,V(2))")]:
            e = parse_module_expr(module)
            for t in enumerate_comm_tuples(fld, 2, 2):
                base = jordan_type(action_at(e, t).op)
                for alpha in fld.elements():
                    if alpha == 0:
                        continue
                    assert jordan_type(action_at(e, t.scaled(alpha)).op) == base
