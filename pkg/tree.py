"""
Finite rooted unordered trees: construction, text/JSON/DOT formats,
canonical forms and tree-order queries
"""

import re
import json
import random
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

_ADDRESS_LABEL = re.compile(r'^\d+(,\d+)*$')


class TreeFormatError(ValueError):
    """Raised when tree text or JSON cannot be read, or parent links do not form a tree"""


class VertexError(ValueError):
    """Raised for a vertex id outside the tree"""


class RootedTree:
    """
    Rooted tree stored as a parent array.

    parent[root] is None. Children lists are derived in id order; that order
    carries no meaning. Optional labels (one per vertex) travel with the tree,
    the family module uses them for vertex addresses.
    """

    def __init__(self, parent: Sequence[Optional[int]], labels: Optional[Sequence[Hashable]] = None):
        n = len(parent)
        if n == 0:
            raise TreeFormatError("A tree needs at least one vertex")
        if labels is not None and len(labels) != n:
            raise TreeFormatError(f"Expected {n} labels, got {len(labels)}")

        normalized = []
        roots = []
        for vertex, p in enumerate(parent):
            if p is None or p == -1:
                normalized.append(None)
                roots.append(vertex)
                continue
            if not isinstance(p, int) or not 0 <= p < n or p == vertex:
                raise TreeFormatError(f"Vertex {vertex} has invalid parent {p!r}")
            normalized.append(p)
        if len(roots) != 1:
            raise TreeFormatError(f"Expected exactly one root, found {len(roots)}")

        self.n = n
        self.root = roots[0]
        self.parent: Tuple[Optional[int], ...] = tuple(normalized)
        self.labels: Optional[Tuple[Hashable, ...]] = tuple(labels) if labels is not None else None

        children: List[List[int]] = [[] for _ in range(n)]
        for vertex, p in enumerate(self.parent):
            if p is not None:
                children[p].append(vertex)
        self.children: Tuple[Tuple[int, ...], ...] = tuple(tuple(c) for c in children)

        # Preorder walk: depth, entry/exit times for O(1) ancestor checks
        self.depth = [0] * n
        self.preorder: List[int] = []
        self._tin = [0] * n
        self._tout = [0] * n
        clock = 0
        stack = [(self.root, False)]
        while stack:
            vertex, leaving = stack.pop()
            if leaving:
                self._tout[vertex] = clock
                continue
            self._tin[vertex] = clock
            clock += 1
            self.preorder.append(vertex)
            stack.append((vertex, True))
            for child in reversed(self.children[vertex]):
                self.depth[child] = self.depth[vertex] + 1
                stack.append((child, False))

        if len(self.preorder) != n:
            raise TreeFormatError("Parent links contain a cycle or do not connect all vertices")

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"RootedTree(n={self.n}, root={self.root})"

    def check_vertex(self, vertex: int):
        if not isinstance(vertex, int) or not 0 <= vertex < self.n:
            raise VertexError(f"Vertex {vertex!r} out of range for tree with {self.n} vertices")

    def neighbors(self, vertex: int) -> List[int]:
        """Children plus parent, for free-tree traversals"""
        result = list(self.children[vertex])
        if self.parent[vertex] is not None:
            result.append(self.parent[vertex])
        return result

    def label_text(self, vertex: int) -> str:
        if self.labels is None:
            return str(vertex)
        return _label_to_text(self.labels[vertex])


def _label_to_text(label) -> str:
    if isinstance(label, (tuple, list)):
        return ','.join(str(part) for part in label)
    return str(label)


def _label_from_text(text):
    if isinstance(text, str) and _ADDRESS_LABEL.match(text):
        return tuple(int(part) for part in text.split(','))
    return text


def from_parents(parent: Sequence[Optional[int]], labels: Optional[Sequence[Hashable]] = None) -> RootedTree:
    return RootedTree(parent, labels)


# Tree-order queries

def is_ancestor(t: RootedTree, a: int, b: int) -> bool:
    """True iff a lies on the path from the root to b (a == b allowed)"""
    t.check_vertex(a)
    t.check_vertex(b)
    return t._tin[a] <= t._tin[b] and t._tout[b] <= t._tout[a]


def meet(t: RootedTree, a: int, b: int) -> int:
    """Deepest common ancestor of a and b"""
    t.check_vertex(a)
    t.check_vertex(b)
    while t.depth[a] > t.depth[b]:
        a = t.parent[a]
    while t.depth[b] > t.depth[a]:
        b = t.parent[b]
    while a != b:
        a = t.parent[a]
        b = t.parent[b]
    return a


# Parenthesis text format

def parse_tree(text: str) -> RootedTree:
    """Read '(()())'-style text; ids follow depth-first reading order, root = 0"""
    if text is None or not text.strip():
        raise TreeFormatError("Empty tree text")

    parent: List[Optional[int]] = []
    stack: List[int] = []
    finished = False
    for position, char in enumerate(text):
        if char.isspace():
            continue
        if finished:
            raise TreeFormatError(f"Unexpected {char!r} after the root closed at position {position}")
        if char == '(':
            parent.append(stack[-1] if stack else None)
            stack.append(len(parent) - 1)
        elif char == ')':
            if not stack:
                raise TreeFormatError(f"Unbalanced ')' at position {position}")
            stack.pop()
            finished = not stack
        else:
            raise TreeFormatError(f"Unexpected character {char!r} at position {position}")
    if stack or not parent:
        raise TreeFormatError("Unbalanced parentheses: missing ')'")
    return RootedTree(parent)


def serialize_tree(t: RootedTree) -> str:
    """Parenthesis text in storage order"""
    parts = []
    stack = [(t.root, False)]
    while stack:
        vertex, leaving = stack.pop()
        if leaving:
            parts.append(')')
            continue
        parts.append('(')
        stack.append((vertex, True))
        for child in reversed(t.children[vertex]):
            stack.append((child, False))
    return ''.join(parts)


def subtree_forms(t: RootedTree) -> List[str]:
    """Canonical form of the subtree below every vertex (children sorted as strings)"""
    forms = [''] * t.n
    for vertex in reversed(t.preorder):
        forms[vertex] = '(' + ''.join(sorted(forms[c] for c in t.children[vertex])) + ')'
    return forms


def canonical_form(t: RootedTree) -> str:
    """Isomorphism-invariant text: equal iff the rooted trees are isomorphic"""
    return subtree_forms(t)[t.root]


@dataclass(frozen=True)
class SubtreeStats:
    """Per-vertex sizes used as necessary conditions for embedding"""
    size: Tuple[int, ...]
    height: Tuple[int, ...]
    leaves: Tuple[int, ...]
    strahler: Tuple[int, ...]


def strahler_of(child_values: Sequence[int]) -> int:
    if not child_values:
        return 1
    top = max(child_values)
    return top + 1 if sum(1 for value in child_values if value == top) >= 2 else top


def subtree_stats(t: RootedTree) -> SubtreeStats:
    size = [1] * t.n
    height = [0] * t.n
    leaves = [0] * t.n
    strahler = [1] * t.n
    for vertex in reversed(t.preorder):
        kids = t.children[vertex]
        if not kids:
            leaves[vertex] = 1
            continue
        size[vertex] = 1 + sum(size[c] for c in kids)
        height[vertex] = 1 + max(height[c] for c in kids)
        leaves[vertex] = sum(leaves[c] for c in kids)
        strahler[vertex] = strahler_of([strahler[c] for c in kids])
    return SubtreeStats(tuple(size), tuple(height), tuple(leaves), tuple(strahler))


def strahler(t: RootedTree) -> int:
    return subtree_stats(t).strahler[t.root]


# JSON parent-array format

def tree_to_json(t: RootedTree) -> str:
    if t.root != 0:
        t = _renumber(t, list(t.preorder))[0]
    data = {'parent': [-1 if p is None else p for p in t.parent]}
    if t.labels is not None:
        data['labels'] = [_label_to_text(label) for label in t.labels]
    return json.dumps(data)


def tree_from_json(text: str) -> RootedTree:
    """Read {"parent": [-1, 0, 0, ...]} with the root at index 0"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise TreeFormatError(f"Invalid tree JSON: {e}")
    if not isinstance(data, dict) or not isinstance(data.get('parent'), list):
        raise TreeFormatError("Tree JSON must be an object with a 'parent' array")
    parent = data['parent']
    if not parent or parent[0] != -1:
        raise TreeFormatError("Tree JSON must mark the root with -1 at index 0")
    if any(not isinstance(p, int) or isinstance(p, bool) for p in parent):
        raise TreeFormatError("Parent entries must be integers")
    labels = data.get('labels')
    if labels is not None:
        labels = [_label_from_text(label) for label in labels]
    return RootedTree(parent, labels)


# DOT export

def to_dot(t: RootedTree) -> str:
    lines = ['digraph {']
    for vertex in range(t.n):
        lines.append(f'  {vertex} [label="{t.label_text(vertex)}"];')
    for vertex in t.preorder:
        for child in t.children[vertex]:
            lines.append(f'  {vertex} -> {child};')
    lines.append('}')
    return '\n'.join(lines) + '\n'


# Derived trees

def rerooted(t: RootedTree, u: int) -> RootedTree:
    """Same vertex ids and labels, root moved to u"""
    t.check_vertex(u)
    parent: List[Optional[int]] = [None] * t.n
    seen = {u}
    queue = deque([u])
    while queue:
        vertex = queue.popleft()
        for other in t.neighbors(vertex):
            if other not in seen:
                seen.add(other)
                parent[other] = vertex
                queue.append(other)
    return RootedTree(parent, t.labels)


def _renumber(t: RootedTree, order: List[int]) -> Tuple[RootedTree, Dict[int, int]]:
    """Relabel vertex ids so that order[k] becomes k"""
    mapping = {old: new for new, old in enumerate(order)}
    parent: List[Optional[int]] = [None] * t.n
    for old, new in mapping.items():
        p = t.parent[old]
        parent[new] = None if p is None else mapping[p]
    labels = None
    if t.labels is not None:
        labels = [t.labels[old] for old in order]
    return RootedTree(parent, labels), mapping


def permuted(t: RootedTree, rng: random.Random) -> Tuple[RootedTree, Dict[int, int]]:
    """Isomorphic copy with every child list shuffled; returns the tree and old->new ids"""
    order = []
    stack = [t.root]
    while stack:
        vertex = stack.pop()
        order.append(vertex)
        kids = list(t.children[vertex])
        rng.shuffle(kids)
        stack.extend(kids)
    return _renumber(t, order)


def enumerate_rooted_trees(n: int) -> List[RootedTree]:
    """One tree per isomorphism class with exactly n vertices"""
    if n < 1:
        return []
    forms = {'()'}
    for _ in range(n - 1):
        grown = set()
        for form in forms:
            base = parse_tree(form)
            for vertex in range(base.n):
                grown.add(canonical_form(RootedTree(list(base.parent) + [vertex])))
        forms = grown
    logger.debug(f"Enumerated {len(forms)} rooted trees with {n} vertices")
    return [parse_tree(form) for form in sorted(forms)]
