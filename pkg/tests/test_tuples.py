import pytest

from suppvar import errors, field
from suppvar.linalg import Mat, jordan_type
from suppvar.polymat import PolyMatrix, check_group_like
from suppvar.tuples import GaTuple, NilTuple, Subalgebra, evaluate, evaluate_inverse
from suppvar.variety import enumerate_comm_tuples

F2 = field(2)
F3 = field(3)
F4 = field(2, 2)
F9 = field(3, 2)

E12 = Mat.unit(F2, 2, 0, 1)
E21 = Mat.unit(F2, 2, 1, 0)


class TestConstruction:
    def test_equal_entries_commute(self):
        t = NilTuple(F2, 2, [E12, E12])
        assert t.height == 2

    def test_non_commuting_rejected(self):
        with pytest.raises(errors.NonCommutingError) as exc:
            NilTuple(F2, 2, [E12, E21])
        assert exc.value.pair == (0, 1)

    def test_not_nilpotent_rejected(self):
        with pytest.raises(errors.NotNilpotentError) as exc:
            NilTuple(F3, 2, [Mat.identity(F3, 2)])
        assert exc.value.index == 0

    def test_trailing_zeros_trimmed(self):
        t = NilTuple(F2, 2, [E12, Mat.zero(F2, 2)])
        assert t.height == 1
        assert t == NilTuple(F2, 2, [E12])

    def test_zero_tuple(self):
        t = NilTuple(F2, 2, [Mat.zero(F2, 2)])
        assert t.is_zero() and t.height == 0


class TestEvaluate:
    def test_single_entry(self):
        pm = evaluate(NilTuple(F2, 2, [E12]), 2)
        assert pm.coeffs == {0: Mat.identity(F2, 2), 1: E12}

    def test_repeated_entry(self):
        pm = evaluate(NilTuple(F2, 2, [E12, E12]), 4)
        assert pm.coeffs == {0: Mat.identity(F2, 2), 1: E12, 2: E12}

    def test_zero_tuple_gives_identity(self):
        assert evaluate(NilTuple(F2, 2, []), 4) == PolyMatrix.identity(F2, 2, 4)

    def test_group_like_at_full_cap(self):
        for t in enumerate_comm_tuples(F2, 2, 2):
            assert check_group_like(evaluate(t, 2 ** max(t.height, 1)))

    def test_inverse(self):
        t = NilTuple(F2, 2, [E12, E12])
        assert evaluate(t, 4) * evaluate_inverse(t, 4) == PolyMatrix.identity(F2, 2, 4)

    def test_bad_cap(self):
        with pytest.raises(errors.CapOverflowError):
            evaluate(NilTuple(F2, 2, []), 0)


class TestFrobeniusComposition:
    def test_precompose_prepends_zeros(self):
        b0 = Mat.unit(F3, 2, 0, 1)
        b1 = b0.scale(2)
        t = NilTuple(F3, 2, [b0, b1]).precompose_frobenius()
        assert t.mats == (Mat.zero(F3, 2), b0, b1)

    def test_precompose_zero_tuple(self):
        assert NilTuple(F2, 2, []).precompose_frobenius().is_zero()

    def test_precompose_twice_substitutes_fourth_power(self):
        t = NilTuple(F2, 2, [E12]).precompose_frobenius(2)
        pm = evaluate(t, 8)
        assert pm.coeffs == {0: Mat.identity(F2, 2), 4: E12}

    def test_evaluate_precompose_is_power_substitution(self):
        for t in enumerate_comm_tuples(F2, 2, 2):
            cap = 2 ** max(t.height, 1)
            lhs = evaluate(t.precompose_frobenius(), 2 * cap)
            rhs = evaluate(t, cap).substitute_power(1, 2 * cap)
            assert lhs == rhs

    def test_postcompose_prime_field(self):
        t = NilTuple(F2, 2, [E12])
        assert t.postcompose_frobenius() == t.precompose_frobenius()

    def test_postcompose_extension_field(self):
        g = F9.from_coords((0, 1))
        t = NilTuple(F9, 2, [Mat.unit(F9, 2, 0, 1).scale(g)])
        shifted = t.postcompose_frobenius()
        expected = Mat.unit(F9, 2, 0, 1).scale(F9.frobenius(g))
        assert shifted.mats == (Mat.zero(F9, 2), expected)
        assert F9.frobenius(g) == F9.from_coords((0, 2))  # g^3 = 2g

    def test_postcompose_zero(self):
        assert NilTuple(F9, 2, []).postcompose_frobenius().is_zero()


class TestIndexGymnastics:
    def test_reverse_two_scalars(self):
        a = GaTuple(F3, [1, 2])
        assert a.reversed(2) == GaTuple(F3, [2, 1])

    def test_reverse_pads(self):
        t = NilTuple(F2, 2, [E12]).reversed(3)
        assert t.mats == (Mat.zero(F2, 2), Mat.zero(F2, 2), E12)

    def test_drop(self):
        b0, b1, b2 = E12, Mat.zero(F2, 2), E12
        t = NilTuple(F2, 2, [b0, b1, b2])
        assert t.dropped(1).mats == (b1, b2)

    def test_reverse_height_check(self):
        with pytest.raises(errors.BadHeightError):
            NilTuple(F2, 2, [E12, E12]).reversed(1)

    def test_reverse_is_involution(self):
        for t in enumerate_comm_tuples(F2, 2, 3):
            assert t.reversed(3).reversed(3) == t

    def test_drop_reverse_composition(self):
        # dropping c entries after reversal at r+c equals reversal at r
        for t in enumerate_comm_tuples(F2, 2, 2):
            for c in (1, 2):
                assert t.reversed(2 + c).dropped(c) == t.reversed(2)

    def test_truncate(self):
        t = NilTuple(F2, 2, [E12, E12])
        assert t.truncated(1) == NilTuple(F2, 2, [E12])


class TestScale:
    def test_scale_by_one(self):
        t = NilTuple(F2, 2, [E12, E12])
        assert t.scaled(1) == t

    def test_scale_by_zero(self):
        assert NilTuple(F2, 2, [E12]).scaled(0).is_zero()

    def test_extension_field_twisted_powers(self):
        g = F4.from_coords((0, 1))
        b0 = Mat.unit(F4, 2, 0, 1)
        b1 = Mat.unit(F4, 2, 0, 1).scale(F4.from_coords((1, 1)))
        t = NilTuple(F4, 2, [b0, b1])
        scaled = t.scaled(g)
        assert scaled.mats[0] == b0.scale(g)
        assert scaled.mats[1] == b1.scale(F4.mul(g, g))

    def test_scale_matches_polynomial_substitution(self):
        g = F4.from_coords((0, 1))
        b = Mat.unit(F4, 2, 0, 1)
        t = NilTuple(F4, 2, [b, b])
        assert evaluate(t.scaled(g), 4) == evaluate(t, 4).substitute_scale(g)


class TestConjugate:
    def test_identity(self):
        t = NilTuple(F2, 2, [E12])
        assert t.conjugated(Mat.identity(F2, 2)) == t

    def test_swap_basis(self):
        swap = Mat.from_rows(F2, [[0, 1], [1, 0]])
        assert NilTuple(F2, 2, [E12]).conjugated(swap) == NilTuple(F2, 2, [E21])

    def test_zero_tuple(self):
        swap = Mat.from_rows(F2, [[0, 1], [1, 0]])
        assert NilTuple(F2, 2, []).conjugated(swap).is_zero()

    def test_singular_rejected(self):
        with pytest.raises(errors.SingularError):
            NilTuple(F2, 2, [E12]).conjugated(Mat.zero(F2, 2))

    def test_preserves_jordan_type(self):
        g = Mat.from_rows(F3, [[1, 2], [0, 1]])
        for t in enumerate_comm_tuples(F3, 2, 1):
            tc = t.conjugated(g)
            if not t.is_zero():
                assert jordan_type(tc.mat(0)) == jordan_type(t.mat(0))


class TestSubalgebra:
    def test_upper_membership(self):
        sub = Subalgebra.upper()
        assert sub.contains(E12)
        assert not sub.contains(E21)

    def test_traceless_mod_2(self):
        sub = Subalgebra.traceless()
        assert sub.contains(Mat.from_rows(F2, [[1, 1], [1, 1]]))
        assert not sub.contains(Mat.from_rows(F2, [[1, 0], [0, 0]]))

    def test_span_membership(self):
        sub = Subalgebra.span([E12])
        assert sub.contains(E12)
        assert sub.contains(Mat.zero(F2, 2))
        assert not sub.contains(E21)

    def test_contains_tuple(self):
        sub = Subalgebra.upper()
        assert sub.contains_tuple(NilTuple(F2, 2, [E12, E12]))
        assert not sub.contains_tuple(NilTuple(F2, 2, [E21]))


class TestGaTuple:
    def test_trim_and_height(self):
        a = GaTuple(F3, [1, 0, 0])
        assert a.height == 1 and a.coeffs == (1,)

    def test_zero(self):
        assert GaTuple(F3, [0, 0]).is_zero()

    def test_out_of_range_rejected(self):
        with pytest.raises(errors.FieldMismatchError):
            GaTuple(F3, [5])

    def test_scaled(self):
        g = F4.from_coords((0, 1))
        a = GaTuple(F4, [1, 1]).scaled(g)
        assert a.coeffs == (g, F4.mul(g, g))
