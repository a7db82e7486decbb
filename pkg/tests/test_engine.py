"""engine モジュールのテスト（既知インスタンスと個別操作）"""
import pytest

from prefixcode.engine import (TraceEntry, TreeState, add_terminal,
                               build_state, compute_optimal, create_t_mmin,
                               level, materialize_tree, sprout, update_qs)
from prefixcode.errors import (CorruptStateError, InstanceValidationError,
                               TreeRangeError)
from prefixcode.model import ROOT, NodeRef, validate_instance


class TestCreateTMmin:
    def test_running_example(self, running_example):
        state = create_t_mmin(running_example)
        assert state.m == 5
        assert state.cost == 60
        assert state.m_deg == 2
        assert state.depth[1:] == [0, 2, 2, 4, 4]
        assert state.low[1:] == [3, 3, 1]
        assert state.high[1:] == [5, 5, 4]

    def test_n_at_most_r_is_root_and_first_children(self):
        state = create_t_mmin(validate_instance((1, 2, 3), 3))
        assert state.m == 1
        assert state.cost == 6
        assert state.m_deg == 3
        assert state.to_code_tree().terminals == (
            NodeRef(1, 1, 1), NodeRef(2, 1, 2), NodeRef(3, 1, 3))

    def test_fewer_words_than_letters(self):
        state = create_t_mmin(validate_instance((1, 2, 3, 4), 2))
        assert state.cost == 3
        assert 3 not in state.low_queue
        assert 4 not in state.high_queue

    def test_binary(self, binary6):
        state = create_t_mmin(binary6)
        assert state.m == 5
        assert state.cost == 16

    def test_rejects_single_word(self):
        with pytest.raises(InstanceValidationError):
            create_t_mmin(validate_instance((1, 2), 1))


class TestSproutLevel:
    def test_sprout_running_example(self, running_example):
        state = sprout(create_t_mmin(running_example))
        assert state.m == 6
        assert state.depth[6] == 4
        assert state.node(6) == NodeRef(4, 3, 1)
        assert state.m_deg == 1
        # child_1(6) at depth 6 replaced the sprouted terminal at depth 4
        assert state.cost == 62
        assert state.low[1] == 4

    def test_level_running_example(self, running_example):
        state = level(sprout(create_t_mmin(running_example)))
        assert state.cost == 59
        assert state.m_deg == 2
        assert state.swaps == 1

    def test_level_is_noop_when_next_child_is_not_smaller(self):
        state = sprout(create_t_mmin(validate_instance((1, 2, 3), 3)))
        before = (state.cost, state.m_deg, list(state.high))
        level(state)
        assert (state.cost, state.m_deg, list(state.high)) == before

    def test_seventh_tree(self, running_example):
        state = build_state(running_example, 7)
        assert state.cost == 60
        assert state.low[1:] == [4, 4, 1]
        assert state.high[1:] == [7, 7, 2]

    def test_eighth_tree_is_improper(self, running_example):
        state = build_state(running_example, 7)
        state.cycle()
        assert state.m == 8
        assert state.m_deg == 1
        assert state.cost == 62
        assert state.low[1:] == [4, 4, 2]
        assert state.high[1:] == [8, 7, 2]
        assert state.low_queue.key(3) == NodeRef(7, 2, 3)

    def test_sprout_root_child(self):
        state = sprout(create_t_mmin(validate_instance((1, 2, 3), 3)))
        assert state.depth[2] == 1

    def test_sprout_with_empty_queue(self, running_example):
        with pytest.raises(CorruptStateError):
            TreeState(running_example).sprout()


class TestAddTerminal:
    def test_cost_delta(self, running_example):
        state = create_t_mmin(running_example)
        state.sprout()
        before = state.cost
        add_terminal(state)
        assert state.m_deg == 2
        assert state.cost - before == state.depth[6] + 2
        assert state.high[2] == 6

    def test_full_node_raises(self):
        state = create_t_mmin(validate_instance((1, 2, 3), 3))
        with pytest.raises(CorruptStateError):
            add_terminal(state)


class TestUpdateQs:
    def test_empty_interval_removes_entry(self, running_example):
        state = create_t_mmin(running_example)
        state.low[3] = state.high[3] + 1
        update_qs(state, 3)
        assert 3 not in state.low_queue
        assert 3 not in state.high_queue

    def test_keys_follow_interval(self, running_example):
        state = build_state(running_example, 6)
        for i in range(1, 4):
            assert state.low_queue.key(i) == state.child(i, state.low[i])
            assert state.high_queue.key(i) == state.child(i, state.high[i])


class TestMaterializeTree:
    def test_running_example_state(self, running_example):
        state = build_state(running_example, 6)
        assert state.depth[1:] == [0, 2, 2, 4, 4, 4]
        assert state.low[1:] == [4, 3, 1]
        assert state.high[1:] == [6, 6, 3]
        assert state.m_deg == 2
        assert state.cost == 59

    def test_running_example_tree(self, running_example):
        tree = materialize_tree(running_example, 6)
        assert tree.m == 6
        assert len(tree.terminals) == 10
        assert tree.cost == 59
        assert tree.recomputed_cost() == 59
        assert [nt.depth for nt in tree.non_terminals] == [0, 2, 2, 4, 4, 4]
        assert tree.is_proper()

    def test_m_min_matches_create(self, running_example):
        tree = materialize_tree(running_example, 5)
        assert tree == create_t_mmin(running_example).to_code_tree()

    @pytest.mark.parametrize("target_m", [4, 8, 9])
    def test_out_of_range(self, running_example, target_m):
        with pytest.raises(TreeRangeError):
            materialize_tree(running_example, target_m)

    def test_single_word(self):
        tree = materialize_tree(validate_instance((1, 2), 1), 0)
        assert tree.non_terminals == ()
        assert tree.terminals == (ROOT,)


class TestComputeOptimal:
    def test_running_example(self, running_example):
        solution = compute_optimal(running_example)
        assert solution.optimal_m == 6
        assert solution.optimal_cost == 59
        assert solution.trace == (TraceEntry(5, 60), TraceEntry(6, 59), TraceEntry(7, 60))
        assert solution.m_min == 5
        assert solution.m_max == 7
        assert solution.improper_cost == 62
        assert solution.swaps == 2
        assert solution.degree_sum == 6
        assert solution.tree.cost == 59

    def test_binary(self, binary6):
        assert compute_optimal(binary6).optimal_cost == 16

    def test_morse(self, morse):
        solution = compute_optimal(morse)
        assert solution.optimal_cost == 23
        assert solution.optimal_m == 5

    @pytest.mark.parametrize("costs", [(1, 2), (3, 7, 7), (2, 2, 5), (1, 4, 9, 9)])
    def test_two_words(self, costs):
        solution = compute_optimal(validate_instance(costs, 2))
        assert solution.optimal_cost == costs[0] + costs[1]
        assert solution.optimal_m == 1

    def test_single_word(self):
        solution = compute_optimal(validate_instance((1, 2), 1))
        assert solution.optimal_m == 0
        assert solution.optimal_cost == 0
        assert solution.trace == (TraceEntry(0, 0),)
        assert solution.tree.terminals == (ROOT,)

    def test_early_stop(self, running_example):
        solution = compute_optimal(running_example, early_stop=True)
        assert solution.optimal_cost == 59
        assert solution.m_max is None
        assert [e.cost for e in solution.trace] == [60, 59, 60]

    def test_scaling_preserves_argmin(self):
        base = compute_optimal(validate_instance((2, 2, 5), 10))
        scaled = compute_optimal(validate_instance((6, 6, 15), 10))
        assert scaled.optimal_m == base.optimal_m
        assert [e.m for e in scaled.trace] == [e.m for e in base.trace]
        assert [e.cost for e in scaled.trace] == [3 * e.cost for e in base.trace]

    def test_observer_sees_every_tree(self, running_example):
        seen = []
        compute_optimal(running_example, observer=lambda s: seen.append((s.m, s.cost)))
        assert seen == [(5, 60), (6, 59), (7, 60), (8, 62)]
