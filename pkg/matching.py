"""
Maximum bipartite matching (Hopcroft-Karp) for the children-assignment step
"""

from collections import deque
from typing import Deque, Dict, Generic, Hashable, List, Tuple, TypeVar

TLeft = TypeVar('TLeft', bound=Hashable)
TRight = TypeVar('TRight', bound=Hashable)

UNREACHED = -1


class HopcroftKarp(Generic[TLeft, TRight]):
    """Hopcroft-Karp on a bipartite graph given as left vertex -> list of right vertices.

    Iteration follows list order (no sets), so results are reproducible.
    """

    def __init__(self, graph_left: Dict[TLeft, List[TRight]]):
        self._graph_left = graph_left
        self._left: List[TLeft] = list(graph_left.keys())
        self._pair_left: Dict[TLeft, TRight] = {}
        self._pair_right: Dict[TRight, TLeft] = {}
        self._dist_left: Dict[TLeft, int] = {}
        self._free_distance = UNREACHED

    def maximum_matching(self) -> Tuple[int, Dict[TLeft, TRight]]:
        """Size of a maximum matching and one such matching (left -> right)"""
        self._pair_left.clear()
        self._pair_right.clear()
        size = 0
        while self._bfs():
            for left in self._left:
                if left not in self._pair_left and self._dfs(left):
                    size += 1
        return size, dict(self._pair_left)

    def _bfs(self) -> bool:
        queue: Deque[TLeft] = deque()
        for left in self._left:
            if left in self._pair_left:
                self._dist_left[left] = UNREACHED
            else:
                self._dist_left[left] = 0
                queue.append(left)
        self._free_distance = UNREACHED
        while queue:
            left = queue.popleft()
            if self._free_distance != UNREACHED and self._dist_left[left] >= self._free_distance:
                continue
            for right in self._graph_left[left]:
                other = self._pair_right.get(right)
                if other is None:
                    if self._free_distance == UNREACHED:
                        self._free_distance = self._dist_left[left] + 1
                elif self._dist_left[other] == UNREACHED:
                    self._dist_left[other] = self._dist_left[left] + 1
                    queue.append(other)
        return self._free_distance != UNREACHED

    def _dfs(self, left: TLeft) -> bool:
        for right in self._graph_left[left]:
            other = self._pair_right.get(right)
            if other is None:
                if self._free_distance == self._dist_left[left] + 1:
                    self._pair_left[left] = right
                    self._pair_right[right] = left
                    return True
            elif self._dist_left[other] == self._dist_left[left] + 1 and self._dfs(other):
                self._pair_left[left] = right
                self._pair_right[right] = left
                return True
        self._dist_left[left] = UNREACHED
        return False


def saturating_matching(graph_left: Dict[TLeft, List[TRight]]):
    """Matching that covers every left vertex, or None when none exists"""
    if any(not options for options in graph_left.values()):
        return None
    size, matching = HopcroftKarp(graph_left).maximum_matching()
    if size < len(graph_left):
        return None
    return matching
