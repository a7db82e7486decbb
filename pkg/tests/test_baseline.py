"""素朴なベースラインとの照合"""
import math
import random
import time

import pytest

from conftest import GRID, grid_id
from prefixcode.baseline import naive_optimal
from prefixcode.engine import TraceEntry, compute_optimal
from prefixcode.model import validate_instance


def test_running_example(running_example):
    result = naive_optimal(running_example)
    assert result.optimal_m == 6
    assert result.optimal_cost == 59
    assert result.trace == (TraceEntry(5, 60), TraceEntry(6, 59), TraceEntry(7, 60))
    assert result.swaps == 2


def test_single_word():
    result = naive_optimal(validate_instance((1, 2), 1))
    assert result.optimal_cost == 0
    assert result.trace == (TraceEntry(0, 0),)


@pytest.mark.parametrize("case", GRID, ids=grid_id)
def test_matches_engine(case):
    instance = validate_instance(*case)
    solution = compute_optimal(instance)
    result = naive_optimal(instance)
    assert result.trace == solution.trace
    assert result.optimal_m == solution.optimal_m
    assert result.swaps == solution.swaps


@pytest.mark.parametrize("seed", range(20))
def test_matches_engine_on_random_instances(seed):
    rng = random.Random(seed)
    r = rng.randint(2, 9)
    costs = [rng.randint(1, 30) for _ in range(r)]
    instance = validate_instance(costs, rng.randint(2, 400))
    solution = compute_optimal(instance)
    result = naive_optimal(instance)
    assert result.trace == solution.trace
    assert result.swaps == solution.swaps


@pytest.mark.slow
@pytest.mark.parametrize("r", [16, 256])
def test_scaling(r):
    rng = random.Random(r)
    costs = [rng.randint(1, 1000) for _ in range(r)]
    n = 100_000
    instance = validate_instance(costs, n)

    start = time.perf_counter()
    solution = compute_optimal(instance)
    elapsed = time.perf_counter() - start
    print(f"r={r}: engine {elapsed:.2f}s, m={solution.optimal_m}, swaps={solution.swaps}")
    assert elapsed < 5
    assert solution.tree.recomputed_cost() == solution.optimal_cost

    assert naive_optimal(instance).optimal_cost == solution.optimal_cost
    m_min, m_max = solution.m_min, solution.m_max
    bound = 2 * (m_max - m_min + 1) + 2 * (n - 1) * math.log(m_max / max(1, m_min - 1))
    assert solution.swaps <= bound
