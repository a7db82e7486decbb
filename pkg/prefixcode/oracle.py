"""
総当たりオラクル
小さなインスタンスに対する分枝限定法と、一様2分木の閉形式
"""

import heapq
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .engine import CodeTree, NonTerminal
from .errors import OracleBudgetExceeded
from .model import ROOT, Instance, NodeRef

logger = logging.getLogger(__name__)

# frontier leaf: (depth, word); word is the letter-index path from the root
Leaf = Tuple[int, Tuple[int, ...]]


@dataclass(frozen=True)
class OracleResult:
    """オラクルの結果"""
    cost: int
    tree: CodeTree
    nodes_explored: int


class _Search:
    """分枝限定探索

    The shallowest frontier leaf is always decided next: it either becomes a
    terminal or is expanded with its k cheapest children (2 <= k <= r).
    """

    def __init__(self, instance: Instance, budget: int, prune: bool):
        self.instance = instance
        self.costs = instance.costs
        self.n = instance.n
        self.r = instance.r
        self.budget = budget
        self.prune = prune

        self.best_cost: Optional[int] = None
        self.best_words: Tuple[Tuple[int, ...], ...] = ()
        self.nodes_explored = 0
        # best fixed cost seen per (terminal count, frontier depths)
        self.seen: Dict[Tuple[int, Tuple[int, ...]], int] = {}

    def lower_bound(self, fixed_cost: int, fixed_count: int, frontier: List[Leaf]) -> int:
        """c_1 だけを使った補完による下界"""
        pending = sum(depth for depth, _ in frontier)
        extra = self.n - fixed_count - len(frontier)
        if extra <= 0:
            return fixed_cost + pending
        shallowest = frontier[0][0]
        return fixed_cost + pending + extra * (shallowest + self.costs[0])

    def _record(self, cost: int, words: List[Tuple[int, ...]]):
        if self.best_cost is None or cost < self.best_cost:
            self.best_cost = cost
            self.best_words = tuple(words)

    def run(self):
        self.explore(0, [], [(0, ())])

    def explore(self, fixed_cost: int, fixed_words: List[Tuple[int, ...]], frontier: List[Leaf]):
        self.nodes_explored += 1
        if self.nodes_explored > self.budget:
            raise OracleBudgetExceeded(
                f"oracle explored more than {self.budget} nodes "
                f"(r={self.r}, n={self.n})",
                details={'budget': self.budget, 'r': self.r, 'n': self.n}
            )

        fixed_count = len(fixed_words)
        leaves = fixed_count + len(frontier)
        if leaves > self.n:
            return
        if leaves == self.n:
            # every remaining frontier leaf must be a terminal
            cost = fixed_cost + sum(depth for depth, _ in frontier)
            self._record(cost, fixed_words + [word for _, word in frontier])
            return
        if not frontier:
            return

        if self.prune and self.best_cost is not None:
            if self.lower_bound(fixed_cost, fixed_count, frontier) >= self.best_cost:
                return

        state_key = (fixed_count, tuple(sorted(depth for depth, _ in frontier)))
        previous = self.seen.get(state_key)
        if previous is not None and previous <= fixed_cost:
            return
        self.seen[state_key] = fixed_cost

        rest = list(frontier)
        depth, word = heapq.heappop(rest)

        # Expand into the k cheapest children, widest first
        for k in range(min(self.r, self.n - leaves + 1), 1, -1):
            children = list(rest)
            for i in range(1, k + 1):
                heapq.heappush(children, (depth + self.costs[i - 1], word + (i,)))
            self.explore(fixed_cost, fixed_words, children)

        # Or make it a terminal
        self.explore(fixed_cost + depth, fixed_words + [word], rest)


def _tree_from_words(instance: Instance, words: Tuple[Tuple[int, ...], ...], cost: int) -> CodeTree:
    """符号語の集合から CodeTree を構築"""
    if words == ((),):
        return CodeTree(instance, (), (ROOT,), cost)

    def word_depth(word: Tuple[int, ...]) -> int:
        return sum(instance.letter_cost(i) for i in word)

    prefixes = {word[:k] for word in words for k in range(len(word))}
    ordered = sorted(prefixes, key=lambda w: (word_depth(w), w))
    rank_of = {w: rank for rank, w in enumerate(ordered, start=1)}

    non_terminals = tuple(
        NonTerminal(rank_of[w], rank_of[w[:-1]] if w else 0, w[-1] if w else 0, word_depth(w))
        for w in ordered
    )
    terminals = tuple(sorted(
        NodeRef(word_depth(w), rank_of[w[:-1]], w[-1]) for w in words
    ))
    return CodeTree(instance, non_terminals, terminals, cost)


def brute_force_optimal(instance: Instance, budget: int = 2_000_000,
                        prune: bool = True) -> OracleResult:
    """真の木を総当たりして最適コストを求める"""
    search = _Search(instance, budget, prune)
    search.run()
    if search.best_cost is None:
        raise OracleBudgetExceeded(
            f"oracle found no tree with n={instance.n} terminals",
            details={'n': instance.n}
        )

    logger.info(f"oracle r={instance.r}, n={instance.n}: cost={search.best_cost}, "
                f"explored={search.nodes_explored}")
    return OracleResult(
        cost=search.best_cost,
        tree=_tree_from_words(instance, search.best_words, search.best_cost),
        nodes_explored=search.nodes_explored,
    )


def binary_reference(n: int) -> int:
    """一様2分木の最小外部路長"""
    if n <= 1:
        return 0
    k = (n - 1).bit_length()
    x = 2 * (n - 2 ** (k - 1))
    return k * x + (k - 1) * (n - x)
