"""
素朴なベースライン
全 n 個の終端ノードを2本のヒープ（最小・最大、遅延削除）に保持する O(rn log n) 版
ベンチマークとエンジンの照合に使用
"""

import heapq
import logging
from dataclasses import dataclass
from typing import List, Set, Tuple

from .engine import TraceEntry
from .model import Instance, NodeRef

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BaselineResult:
    optimal_m: int
    optimal_cost: int
    trace: Tuple[TraceEntry, ...]
    swaps: int


def _negate(node: NodeRef) -> Tuple[int, int, int]:
    return (-node.depth, -node.parent, -node.child_index)


def naive_optimal(instance: Instance) -> BaselineResult:
    """全終端ノードをヒープで管理して最適コストを求める"""
    n, r = instance.n, instance.r
    c = (0,) + instance.costs
    if n == 1:
        return BaselineResult(0, 0, (TraceEntry(0, 0),), 0)

    depth: List[int] = [0, 0]
    alive: Set[NodeRef] = set()
    min_heap: List[NodeRef] = []
    max_heap: List[Tuple[int, int, int]] = []
    cost = 0
    swaps = 0

    def add(node: NodeRef):
        nonlocal cost
        alive.add(node)
        heapq.heappush(min_heap, node)
        heapq.heappush(max_heap, _negate(node))
        cost += node.depth

    def pop_min() -> NodeRef:
        nonlocal cost
        while True:
            node = heapq.heappop(min_heap)
            if node in alive:
                alive.discard(node)
                cost -= node.depth
                return node

    def peek_max() -> NodeRef:
        while True:
            d, p, i = max_heap[0]
            node = NodeRef(-d, -p, -i)
            if node in alive:
                return node
            heapq.heappop(max_heap)

    # T_1
    for i in range(1, min(r, n) + 1):
        add(NodeRef(c[i], 1, i))
    m = 1
    m_deg = min(r, n)
    trace: List[TraceEntry] = []
    if len(alive) == n:
        trace.append(TraceEntry(m, cost))

    while True:
        # Sprout
        parent = pop_min()
        m += 1
        depth.append(parent.depth)
        add(NodeRef(parent.depth + c[1], m, 1))
        m_deg = 1

        # Fill up to n terminals, then swap while the next child beats the maximum
        while m_deg < r:
            candidate = NodeRef(depth[m] + c[m_deg + 1], m, m_deg + 1)
            if len(alive) >= n and not candidate < peek_max():
                break
            add(candidate)
            m_deg += 1
            if len(alive) > n:
                maximum = peek_max()
                alive.discard(maximum)
                cost -= maximum.depth
                swaps += 1

        if len(alive) < n:
            continue
        if m_deg < 2:
            logger.debug(f"baseline: T_{m} is improper (C={cost})")
            break
        trace.append(TraceEntry(m, cost))

    best = min(trace, key=lambda entry: (entry.cost, entry.m))
    logger.info(f"baseline r={r}, n={n}: m={best.m}, cost={best.cost}, swaps={swaps}")
    return BaselineResult(best.m, best.cost, tuple(trace), swaps)
