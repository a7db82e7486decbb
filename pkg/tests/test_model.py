"""model モジュールのテスト"""
from decimal import Decimal
from fractions import Fraction

import random

import pytest

from prefixcode.engine import build_state
from prefixcode.errors import InstanceValidationError
from prefixcode.model import (ROOT, NodeRef, node_compare, parse_cost,
                              parse_costs, validate_instance)


class TestValidateInstance:
    def test_sorts_costs(self):
        instance = validate_instance((5, 2, 2), 10)
        assert instance.costs == (2, 2, 5)
        assert instance.r == 3
        assert instance.n == 10
        assert instance.denominator == 1

    def test_rescales_fractions(self):
        instance = validate_instance((Fraction(1, 2), 1), 6)
        assert instance.costs == (1, 2)
        assert instance.denominator == 2
        assert instance.original_costs == (Fraction(1, 2), Fraction(1))

    def test_mixed_denominators(self):
        instance = validate_instance(("1/3", "0.5", 2), 4)
        assert instance.denominator == 6
        assert instance.costs == (2, 3, 12)

    def test_scaled_costs_are_not_reduced(self):
        assert validate_instance((2, 4), 3).costs == (2, 4)

    def test_float_and_decimal_are_exact(self):
        instance = validate_instance((0.1, Decimal("0.3")), 3)
        assert instance.denominator == 10
        assert instance.costs == (1, 3)

    @pytest.mark.parametrize("costs", [(0, 1), (-1, 2), (1, "-1/2")])
    def test_rejects_non_positive(self, costs):
        with pytest.raises(InstanceValidationError, match="strictly positive"):
            validate_instance(costs, 3)

    def test_rejects_single_letter(self):
        with pytest.raises(InstanceValidationError, match="r >= 2"):
            validate_instance((1,), 4)

    @pytest.mark.parametrize("n", [0, -3, 2.5, True])
    def test_rejects_bad_n(self, n):
        with pytest.raises(InstanceValidationError):
            validate_instance((1, 2), n)

    @pytest.mark.parametrize("value", [float("inf"), float("nan"), Decimal("NaN"), True, object()])
    def test_rejects_non_rational(self, value):
        with pytest.raises(InstanceValidationError):
            validate_instance((1, value), 3)

    def test_validation_error_is_value_error(self):
        with pytest.raises(ValueError):
            validate_instance((1,), 2)


class TestMMin:
    @pytest.mark.parametrize("costs,n,expected", [
        ((2, 2, 5), 10, 5),
        ((1, 1), 6, 5),
        ((1, 2, 3), 3, 1),
        ((1, 2), 2, 1),
        ((1, 2, 3, 4), 11, 4),
        ((1, 2), 1, 0),
    ])
    def test_m_min(self, costs, n, expected):
        assert validate_instance(costs, n).m_min == expected


class TestParseCost:
    @pytest.mark.parametrize("text,expected", [
        ("2", Fraction(2)),
        ("0.5", Fraction(1, 2)),
        (" 1/2 ", Fraction(1, 2)),
        ("1e-1", Fraction(1, 10)),
    ])
    def test_parses_exactly(self, text, expected):
        assert parse_cost(text) == expected

    @pytest.mark.parametrize("text", ["", "abc", "1/0", "1,5"])
    def test_rejects_malformed(self, text):
        with pytest.raises(InstanceValidationError):
            parse_cost(text)

    def test_parse_costs(self):
        assert parse_costs("2,2,5") == [2, 2, 5]
        assert parse_costs("1/2,1") == [Fraction(1, 2), 1]


class TestNodeOrder:
    def test_depth_first(self):
        assert node_compare(NodeRef(2, 5, 1), NodeRef(3, 1, 1)) == -1

    def test_parent_rank_breaks_depth_ties(self):
        assert node_compare(NodeRef(4, 2, 3), NodeRef(4, 3, 1)) == -1

    def test_child_index_breaks_remaining_ties(self):
        assert node_compare(NodeRef(4, 3, 2), NodeRef(4, 3, 1)) == 1

    def test_equal(self):
        assert node_compare(NodeRef(4, 3, 2), NodeRef(4, 3, 2)) == 0

    def test_root_is_minimum(self):
        assert node_compare(ROOT, NodeRef(1, 1, 1)) == -1


def _tree_nodes(rng):
    """ランダムなインスタンスの T_m から、内部ノードとその全ての子を集める"""
    r = rng.randint(2, 5)
    instance = validate_instance([rng.randint(1, 9) for _ in range(r)], rng.randint(r + 1, 60))
    state = build_state(instance, instance.m_min)
    nodes = [state.node(rank) for rank in range(1, state.m + 1)]
    nodes += [state.child(i, u) for u in range(1, state.m + 1) for i in range(1, r + 1)]
    return state, nodes


@pytest.mark.parametrize("seed", range(10))
def test_node_order_properties(seed):
    rng = random.Random(seed)
    state, nodes = _tree_nodes(rng)
    for node in nodes:
        if node != ROOT:
            assert node.depth == state.depth[node.parent] + state.c[node.child_index]

    for _ in range(2000):
        u, v, w = (rng.choice(nodes) for _ in range(3))
        assert node_compare(u, v) == -node_compare(v, u)
        assert (node_compare(u, v) == 0) == (u == v)
        if node_compare(u, v) < 0 and node_compare(v, w) < 0:
            assert node_compare(u, w) < 0
        if node_compare(u, w) < 0:
            assert u.depth <= w.depth
