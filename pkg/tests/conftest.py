"""
共通フィクスチャ
"""
import itertools
import os
import sys

import pytest

# プロジェクトルートをパスに追加
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from prefixcode.model import validate_instance

LETTER_COSTS = (1, 2, 3, 5)

# r ∈ {2,3,4}, cost multisets over {1,2,3,5}, n ∈ 2..12
GRID = [
    (costs, n)
    for r in (2, 3, 4)
    for costs in itertools.combinations_with_replacement(LETTER_COSTS, r)
    for n in range(2, 13)
]


def grid_id(case):
    costs, n = case
    return f"c{''.join(map(str, costs))}-n{n}"


@pytest.fixture
def running_example():
    return validate_instance((2, 2, 5), 10)


@pytest.fixture
def morse():
    return validate_instance((1, 2), 6)


@pytest.fixture
def binary6():
    return validate_instance((1, 1), 6)
