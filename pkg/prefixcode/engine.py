"""
浅い木の列 T_mmin ... T_mmax の構築エンジン
Sprout / Level による逐次構築、コスト追跡、最適な真木の具体化
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

from .errors import CorruptStateError, InstanceValidationError, TreeRangeError
from .model import ROOT, Instance, NodeRef
from .queues import MaxKeyedHeap, MinKeyedHeap

logger = logging.getLogger(__name__)

# queue key of a terminal: (depth, parent rank, child index)
NodeKey = Tuple[int, int, int]


class NonTerminal(NamedTuple):
    """内部ノードのレコード"""
    rank: int
    parent: int
    child_index: int
    depth: int


class TraceEntry(NamedTuple):
    m: int
    cost: int


@dataclass(frozen=True)
class CodeTree:
    """具体化された木（内部ノードと終端ノード）"""
    instance: Instance
    non_terminals: Tuple[NonTerminal, ...]
    terminals: Tuple[NodeRef, ...]
    cost: int

    @property
    def m(self) -> int:
        return len(self.non_terminals)

    def recomputed_cost(self) -> int:
        """終端ノードの深さの総和を再計算"""
        return sum(t.depth for t in self.terminals)

    def child_counts(self) -> Dict[int, int]:
        """内部ノードごとの子の数"""
        counts = {nt.rank: 0 for nt in self.non_terminals}
        for nt in self.non_terminals:
            if nt.rank != 1:
                counts[nt.parent] += 1
        for t in self.terminals:
            if t.parent:
                counts[t.parent] += 1
        return counts

    def is_proper(self) -> bool:
        return all(count >= 2 for count in self.child_counts().values())


@dataclass(frozen=True)
class Solution:
    """最適解"""
    optimal_m: int
    optimal_cost: int
    trace: Tuple[TraceEntry, ...]
    tree: CodeTree
    m_min: int
    m_max: Optional[int]
    swaps: int = 0
    degree_sum: int = 0
    improper_cost: Optional[int] = None


class TreeState:
    """アルゴリズムの状態（T_m を表現）

    Ranks are 1-based: ``depth[u]``, ``parent[u]`` and ``via[u]`` describe
    non-terminal u, ``low[i]``/``high[i]`` bound the ranks whose ith child is
    a terminal. Index 0 of every table is unused.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self.n = instance.n
        self.r = instance.r
        self.c = (0,) + instance.costs

        self.m = 0
        self.cost = 0
        self.m_deg = 0
        self.depth: List[int] = [0]
        self.parent: List[int] = [0]
        self.via: List[int] = [0]
        self.low: List[int] = [1] * (self.r + 1)
        self.high: List[int] = [0] * (self.r + 1)
        self.low_queue: MinKeyedHeap[int, NodeKey] = MinKeyedHeap()
        self.high_queue: MaxKeyedHeap[int, NodeKey] = MaxKeyedHeap()

        # terminals replaced by Level, over the whole run
        self.swaps = 0

    def child(self, i: int, u: int) -> NodeRef:
        """内部ノード u の i 番目の子"""
        return NodeRef(self.depth[u] + self.c[i], u, i)

    def node(self, rank: int) -> NodeRef:
        """ランク rank の内部ノード"""
        if rank == 1:
            return ROOT
        return NodeRef(self.depth[rank], self.parent[rank], self.via[rank])

    def terminal_count(self) -> int:
        return sum(max(0, self.high[i] - self.low[i] + 1) for i in range(1, self.r + 1))

    def update_qs(self, i: int, low: bool = True, high: bool = True):
        """キュー内のエントリ i を low[i] / high[i] に合わせる

        ``low``/``high`` name the bounds that moved. An entry that is not
        queued yet gets both keys. Keys are plain ``(depth, parent, index)``
        tuples, ordered like the ``NodeRef`` they stand for.
        """
        lo, hi = self.low[i], self.high[i]
        if lo > hi:
            self.low_queue.discard(i)
            self.high_queue.discard(i)
            return
        if i not in self.low_queue:
            low = high = True
        c = self.c[i]
        if low:
            self.low_queue.push(i, (self.depth[lo] + c, lo, i))
        if high:
            self.high_queue.push(i, (self.depth[hi] + c, hi, i))

    def _make_min_terminal_non_terminal(self) -> int:
        """最小終端ノードを内部ノード m+1 にする"""
        if self.low_queue.is_empty():
            raise CorruptStateError(
                "low-queue is empty, no terminal to sprout",
                details={'m': self.m, 'cost': self.cost}
            )
        i, (depth, parent, _) = self.low_queue.peek()
        self.m += 1
        self.depth.append(depth)
        self.parent.append(parent)
        self.via.append(i)
        self.low[i] += 1
        self.update_qs(i, high=False)
        return depth

    def add_terminal(self):
        """内部ノード m の次の子を終端ノードとして追加"""
        if self.m_deg >= self.r:
            raise CorruptStateError(
                f"non-terminal {self.m} already has all {self.r} children",
                details={'m': self.m, 'm_deg': self.m_deg}
            )
        self.m_deg += 1
        self.cost += self.depth[self.m] + self.c[self.m_deg]
        self.high[self.m_deg] = self.m
        self.update_qs(self.m_deg, low=False)

    def sprout(self):
        """Sprout: 最小終端ノードを内部ノード化し、最小の子を追加"""
        d = self._make_min_terminal_non_terminal()
        self.cost -= d
        self.m_deg = 0
        self.add_terminal()

    def level(self):
        """Level: 新しい内部ノードの子と最大終端ノードを交換"""
        m, c = self.m, self.c
        while self.m_deg < self.r:
            k = self.m_deg + 1
            candidate = (self.depth[m] + c[k], m, k)
            i, maximum = self.high_queue.peek()
            if not candidate < maximum:
                break
            self.add_terminal()
            if i == self.m_deg:
                raise CorruptStateError(
                    f"maximum terminal shares child index {i} with the added child",
                    details={'m': m, 'i': i}
                )
            # Delete the maximum terminal
            self.cost -= maximum[0]
            self.high[i] -= 1
            self.update_qs(i, low=False)
            self.swaps += 1

    def cycle(self):
        """T_m から T_{m+1} を計算"""
        self.sprout()
        self.level()
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f"T_{self.m}: C={self.cost}, mDeg={self.m_deg}")

    def bounds(self) -> Tuple[List[int], List[int]]:
        """low / high のコピー（T_m を後で具体化するためのチェックポイント）"""
        return self.low[:], self.high[:]

    def to_code_tree(self) -> CodeTree:
        """現在の木を CodeTree として具体化"""
        return self.tree_at(self.m, self.low, self.high, self.cost)

    def tree_at(self, m: int, low: List[int], high: List[int], cost: int) -> CodeTree:
        """過去の T_m を具体化

        Rank tables only grow, so their first m entries still describe T_m;
        ``low``/``high`` must be the bounds saved when T_m was current.
        """
        non_terminals = tuple(
            NonTerminal(rank, self.parent[rank], self.via[rank], self.depth[rank])
            for rank in range(1, m + 1)
        )
        terminals = []
        for i in range(1, self.r + 1):
            for u in range(low[i], high[i] + 1):
                terminals.append(self.child(i, u))
        terminals.sort()

        if len(terminals) != self.n:
            raise CorruptStateError(
                f"tree T_{m} has {len(terminals)} terminals, expected {self.n}",
                details={'low': low[1:], 'high': high[1:]}
            )
        return CodeTree(self.instance, non_terminals, tuple(terminals), cost)


def create_t_mmin(instance: Instance) -> TreeState:
    """最初の木 T_mmin を構築"""
    if instance.n < 2:
        raise InstanceValidationError(
            "the tree sequence needs n >= 2; n = 1 is the empty-word code",
            details={'n': instance.n}
        )
    state = TreeState(instance)
    r, n, c = state.r, state.n, state.c

    # Create T_1
    state.m = 1
    state.depth.append(0)
    state.parent.append(0)
    state.via.append(0)
    first = min(r, n)
    for i in range(1, first + 1):
        state.low[i] = state.high[i] = 1
        state.update_qs(i)
    state.cost = sum(c[1:first + 1])
    state.m_deg = first
    if n <= r:
        return state

    m_min = instance.m_min

    # Create T_2 ... T_{mmin-1}: every new non-terminal gets all r children
    for _ in range(2, m_min):
        d = state._make_min_terminal_non_terminal()
        for j in range(1, r + 1):
            state.high[j] = state.m
            state.update_qs(j, low=False)
        state.cost += (r - 1) * d + sum(c[1:])

    # Create T_mmin
    d = state._make_min_terminal_non_terminal()
    delta = n - (r - 1) * (m_min - 1)
    for j in range(1, delta + 1):
        state.high[j] = state.m
        state.update_qs(j, low=False)
    state.cost += (delta - 1) * d + sum(c[1:delta + 1])
    state.m_deg = delta
    state.level()

    logger.debug(f"T_{state.m} (m_min): C={state.cost}, mDeg={state.m_deg}")
    return state


def sprout(state: TreeState) -> TreeState:
    state.sprout()
    return state


def level(state: TreeState) -> TreeState:
    state.level()
    return state


def add_terminal(state: TreeState) -> TreeState:
    state.add_terminal()
    return state


def update_qs(state: TreeState, i: int) -> TreeState:
    state.update_qs(i)
    return state


def _single_word_tree(instance: Instance) -> CodeTree:
    return CodeTree(instance, (), (ROOT,), 0)


def build_state(instance: Instance, target_m: int) -> TreeState:
    """T_target_m まで構築し直した状態を返す"""
    if target_m < instance.m_min:
        raise TreeRangeError(
            f"m={target_m} is below m_min={instance.m_min}",
            details={'target_m': target_m, 'm_min': instance.m_min}
        )
    state = create_t_mmin(instance)
    while state.m < target_m:
        if state.m_deg < 2:
            raise TreeRangeError(
                f"m={target_m} is beyond m_max={state.m - 1}",
                details={'target_m': target_m, 'm_max': state.m - 1}
            )
        state.cycle()
    if state.m_deg < 2:
        raise TreeRangeError(
            f"T_{target_m} is improper (m_max={target_m - 1})",
            details={'target_m': target_m, 'm_max': target_m - 1}
        )
    return state


def materialize_tree(instance: Instance, target_m: int) -> CodeTree:
    """T_target_m を具体化（2回目の走査）"""
    if instance.n == 1:
        if target_m != 0:
            raise TreeRangeError(
                "the single-word code has no non-terminals",
                details={'target_m': target_m}
            )
        return _single_word_tree(instance)
    return build_state(instance, target_m).to_code_tree()


Observer = Callable[[TreeState], None]


def compute_optimal(instance: Instance, early_stop: bool = False,
                    observer: Optional[Observer] = None) -> Solution:
    """Compute-Trees: 最小コストの真の浅い木を求める

    ``observer`` is called with the live state after T_mmin and after every
    cycle, including the final one that produces the improper tree.
    The best tree is rebuilt from a checkpoint of its bounds, so no second
    run is needed; ``materialize_tree`` gives the same tree.
    """
    if instance.n == 1:
        return Solution(
            optimal_m=0,
            optimal_cost=0,
            trace=(TraceEntry(0, 0),),
            tree=_single_word_tree(instance),
            m_min=0,
            m_max=0,
        )

    state = create_t_mmin(instance)
    if observer is not None:
        observer(state)

    trace = [TraceEntry(state.m, state.cost)]
    best = trace[0]
    best_bounds = state.bounds()
    degree_sum = state.m_deg
    improper_cost = None
    stopped_early = False

    while state.m_deg >= 2:
        state.cycle()
        if observer is not None:
            observer(state)

        if state.m_deg < 2:
            improper_cost = state.cost
            logger.debug(f"T_{state.m} is improper (C={state.cost}), m_max={state.m - 1}")
            break

        degree_sum += state.m_deg
        trace.append(TraceEntry(state.m, state.cost))
        if state.cost < best.cost:
            best = trace[-1]
            best_bounds = state.bounds()
        if early_stop and state.cost >= trace[-2].cost:
            stopped_early = True
            logger.debug(f"early stop at T_{state.m}: C={state.cost} >= {trace[-2].cost}")
            break

    tree = state.tree_at(best.m, *best_bounds, best.cost)

    solution = Solution(
        optimal_m=best.m,
        optimal_cost=best.cost,
        trace=tuple(trace),
        tree=tree,
        m_min=instance.m_min,
        m_max=None if stopped_early else trace[-1].m,
        swaps=state.swaps,
        degree_sum=degree_sum,
        improper_cost=improper_cost,
    )
    logger.info(f"solved r={instance.r}, n={instance.n}: m={best.m}, cost={best.cost}, "
                f"trees={len(trace)}, swaps={state.swaps}")
    return solution


def check_shallow(tree: CodeTree, instance: Instance) -> bool:
    """浅い木の条件 (i)(ii) を検証（テスト用）"""
    if not tree.non_terminals:
        return True

    child_is_non_terminal = {(nt.parent, nt.child_index) for nt in tree.non_terminals if nt.rank != 1}
    child_is_terminal = {(t.parent, t.child_index) for t in tree.terminals}

    deepest_non_terminal = max(nt.depth for nt in tree.non_terminals)
    deepest_terminal = max(t.depth for t in tree.terminals)

    shallowest_other = None
    shallowest_excluded = None
    for nt in tree.non_terminals:
        for i in range(1, instance.r + 1):
            if (nt.rank, i) in child_is_non_terminal:
                continue
            d = nt.depth + instance.letter_cost(i)
            if shallowest_other is None or d < shallowest_other:
                shallowest_other = d
            if (nt.rank, i) not in child_is_terminal:
                if shallowest_excluded is None or d < shallowest_excluded:
                    shallowest_excluded = d

    if shallowest_other is not None and deepest_non_terminal > shallowest_other:
        return False
    if shallowest_excluded is not None and deepest_terminal > shallowest_excluded:
        return False
    return True
