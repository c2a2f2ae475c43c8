import pytest

from suppvar import errors
from suppvar.modexpr import (
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
    leaf_size,
    parse_module_expr,
    required_height,
)


class TestParse:
    def test_sym(self):
        assert parse_module_expr("sym(3, V(2))") == Sym(3, Defining(2))

    def test_tensor_twist(self):
        assert parse_module_expr("tensor(V(2), tw(V(2)))") == \
            Tensor(Defining(2), Twist(Defining(2), 1))

    def test_dual_sym(self):
        assert parse_module_expr("dual(sym(2, V(3)))") == Dual(Sym(2, Defining(3)))

    def test_whitespace_insensitive(self):
        assert parse_module_expr(" sum( triv ,V( 2 ) ) ") == DirectSum(Trivial(), Defining(2))

    def test_twist_arity(self):
        assert parse_module_expr("tw(V(2),3)") == Twist(Defining(2), 3)
        with pytest.raises(errors.ArityError):
            parse_module_expr("tw(V(2),0)")

    def test_unknown_node(self):
        with pytest.raises(errors.UnknownNodeError):
            parse_module_expr("weyl(2)")

    def test_syntax_error_carries_position(self):
        with pytest.raises(errors.ParseError) as exc:
            parse_module_expr("sym(2 V(2))")
        assert exc.value.position is not None

    def test_trailing_garbage(self):
        with pytest.raises(errors.ParseError):
            parse_module_expr("V(2))")

    def test_ext_degree_too_big(self):
        with pytest.raises(errors.DimensionMismatchError):
            parse_module_expr("ext(5, V(2))")

    def test_round_trip(self):
        for text in ["V(2)", "triv", "sym(3,V(2))", "tensor(V(2),tw(V(2)))",
                     "dual(sym(2,V(3)))", "sum(triv,ext(2,V(3)))", "tw(V(2),2)"]:
            e = parse_module_expr(text)
            assert format_module_expr(e) == text.replace(" ", "")
            assert parse_module_expr(format_module_expr(e)) == e


class TestDim:
    def test_steinberg_like(self):
        assert dim(Sym(3, Defining(2))) == 4

    def test_tensor(self):
        assert dim(Tensor(Defining(2), Defining(2))) == 4

    def test_ext(self):
        assert dim(Ext(2, Defining(3))) == 3

    def test_others(self):
        assert dim(Trivial()) == 1
        assert dim(Dual(Defining(5))) == 5
        assert dim(Twist(Defining(3), 2)) == 3
        assert dim(DirectSum(Trivial(), Defining(2))) == 3
        assert dim(Sym(0, Defining(4))) == 1


class TestLeafSize:
    def test_agreeing_leaves(self):
        assert leaf_size(Tensor(Defining(2), Twist(Defining(2), 1))) == 2

    def test_trivial_has_none(self):
        assert leaf_size(Trivial()) is None

    def test_conflict_raises(self):
        with pytest.raises(errors.ShapeMismatchError):
            leaf_size(Tensor(Defining(2), Defining(3)))


class TestDegreeOracle:
    def test_defining(self):
        assert degree_bound(Defining(2), 2) == 1

    def test_sym(self):
        assert degree_bound(Sym(3, Defining(2)), 2) == 3

    def test_tensor_adds(self):
        assert degree_bound(Tensor(Defining(2), Sym(2, Defining(2))), 3) == 3

    def test_twist_multiplies_by_p_power(self):
        assert degree_bound(Twist(Defining(2), 1), 3) == 3
        assert degree_bound(Twist(Sym(2, Defining(2)), 2), 2) == 8

    def test_required_height(self):
        # sym(3, V(2)) at p=2: (p-1)d = 3 < 4 = 2^2
        assert required_height(Sym(3, Defining(2)), 2) == 2
        # sym(2, V(2)) at p=3: (p-1)d = 4 < 9 = 3^2
        assert required_height(Sym(2, Defining(2)), 3) == 2
        assert required_height(Trivial(), 3) == 0
        assert required_height(Defining(2), 2) == 1
