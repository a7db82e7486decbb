"""
キー付き優先度キュー
エントリ（子番号）ごとに1つのキーを持ち、挿入・更新・削除・先頭参照を償却 O(log r) で行う
"""

import heapq
import operator
from typing import Any, Dict, Generic, Hashable, Iterator, List, Optional, Tuple, TypeVar

E = TypeVar('E', bound=Hashable)
K = TypeVar('K')

_MISSING = object()

# stale slots allowed beyond the live entries before the heap is rebuilt
_SLACK = 16


class KeyedHeap(Generic[E, K]):
    """heapq over (order, entry, key) slots with lazy invalidation.

    ``current`` holds the live key of every entry. A slot whose key no longer
    matches is skipped by ``peek`` and dropped when the heap is rebuilt.
    Subclasses decide the direction through ``_order``.
    """

    def __init__(self):
        self.heap: List[Tuple[Any, E, K]] = []
        self.current: Dict[E, K] = {}

    @staticmethod
    def _order(key: K) -> Any:
        raise NotImplementedError

    def __len__(self) -> int:
        return len(self.current)

    def __contains__(self, entry: E) -> bool:
        return entry in self.current

    def __iter__(self) -> Iterator[Tuple[E, K]]:
        return iter(list(self.current.items()))

    def is_empty(self) -> bool:
        return not self.current

    def key(self, entry: E) -> Optional[K]:
        return self.current.get(entry)

    def push(self, entry: E, key: K):
        """挿入、既存エントリならキーを更新"""
        self.current[entry] = key
        heapq.heappush(self.heap, (self._order(key), entry, key))
        if len(self.heap) > 2 * len(self.current) + _SLACK:
            self._rebuild()

    def discard(self, entry: E) -> bool:
        """エントリを削除（存在しなければ何もしない）"""
        if self.current.pop(entry, _MISSING) is _MISSING:
            return False
        if len(self.heap) > 2 * len(self.current) + _SLACK:
            self._rebuild()
        return True

    def peek(self) -> Tuple[E, K]:
        """先頭（最小または最大）のエントリとキー"""
        heap, current = self.heap, self.current
        while heap:
            _, entry, key = heap[0]
            if current.get(entry, _MISSING) == key:
                return entry, key
            heapq.heappop(heap)
        raise IndexError("peek from an empty queue")

    def _rebuild(self):
        order = self._order
        self.heap = [(order(key), entry, key) for entry, key in self.current.items()]
        heapq.heapify(self.heap)

    def __repr__(self):
        return f"{type(self).__name__}({sorted(self.current.items())!r})"


class MinKeyedHeap(KeyedHeap[E, K]):
    @staticmethod
    def _order(key):
        return key


def _negate(key):
    if isinstance(key, tuple):
        return tuple(map(operator.neg, key))
    return -key


class MaxKeyedHeap(KeyedHeap[E, K]):
    """Keys are numbers or tuples of numbers."""

    _order = staticmethod(_negate)
