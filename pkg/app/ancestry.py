"""
Suffix-links tree with an order-maintenance marker list.

Every tree node owns an in-marker and an out-marker in one ordered list;
a node's markers enclose exactly the markers of its descendants, so the
ancestor test is two label comparisons. Labels are integers spread over
a large space and respread locally when an insertion finds no gap.
"""

import logging
from typing import Dict, Iterator, List, Sequence

from .errors import InvariantViolation

logger = logging.getLogger('slider.ancestry')

LABEL_SPACE = 1 << 62


class _Marker:
    __slots__ = ('label', 'prev', 'next', 'owner', 'opening')

    def __init__(self, label: int, owner: int, opening: bool):
        self.label = label
        self.owner = owner
        self.opening = opening
        self.prev = None
        self.next = None


class AncestryForest:
    """Ancestor and link-distance queries over the suffix-links tree of internal nodes."""

    def __init__(self, root: int):
        self.root = root
        self._head = _Marker(0, -1, True)
        self._tail = _Marker(LABEL_SPACE, -1, False)
        self._head.next = self._tail
        self._tail.prev = self._head
        self._in: Dict[int, _Marker] = {}
        self._out: Dict[int, _Marker] = {}
        self._depth: Dict[int, int] = {root: 0}
        self._parent: Dict[int, int] = {root: root}
        self.marker_ops = 0
        self.relabels = 0
        m_in = self._insert_after(self._head, root, True)
        self._in[root] = m_in
        self._out[root] = self._insert_after(m_in, root, False)

    def __contains__(self, node: int) -> bool:
        return node in self._in

    def __len__(self) -> int:
        return len(self._in)

    def link_depth(self, node: int) -> int:
        return self._depth[node]

    def parent(self, node: int) -> int:
        return self._parent[node]

    def nodes(self) -> Iterator[int]:
        return iter(self._in)

    def attach_chain(self, parent: int, chain: Sequence[int]) -> None:
        """
        Hang a chain under `parent`. `chain` is in creation order: chain[k]
        links to chain[k + 1] and the last element links to `parent`, so
        insertion runs from the end of the chain downwards.
        """
        if parent not in self._in:
            raise InvariantViolation(f'attach target {parent} is not in the links tree')
        for node in reversed(chain):
            if node in self._in:
                raise InvariantViolation(f'node {node} attached twice')
            m_in = self._insert_after(self._in[parent], node, True)
            self._in[node] = m_in
            self._out[node] = self._insert_after(m_in, node, False)
            self._depth[node] = self._depth[parent] + 1
            self._parent[node] = parent
            self.marker_ops += 1
            parent = node

    def remove_leaf(self, node: int) -> None:
        """Drop a node that must have no children in the links tree."""
        if node == self.root:
            raise InvariantViolation('cannot remove the root of the links tree')
        m_in = self._in.get(node)
        if m_in is None:
            raise InvariantViolation(f'node {node} is not in the links tree')
        m_out = self._out[node]
        if m_in.next is not m_out:
            raise InvariantViolation(
                f'node {node} is the target of suffix links (child {m_in.next.owner}); '
                'an evicted parent must be a leaf of the links tree')
        m_in.prev.next = m_out.next
        m_out.next.prev = m_in.prev
        del self._in[node], self._out[node], self._depth[node], self._parent[node]
        self.marker_ops += 1

    def is_ancestor(self, a: int, b: int) -> bool:
        return (self._in[a].label <= self._in[b].label
                and self._out[b].label <= self._out[a].label)

    def link_distance(self, a: int, b: int) -> int:
        if not self.is_ancestor(a, b):
            raise InvariantViolation(f'{a} is not a links-tree ancestor of {b}')
        return self._depth[b] - self._depth[a]

    def _insert_after(self, x: _Marker, owner: int, opening: bool) -> _Marker:
        nxt = x.next
        if nxt.label - x.label < 2:
            self._respread(x)
            nxt = x.next
        m = _Marker((x.label + nxt.label) // 2, owner, opening)
        m.prev = x
        m.next = nxt
        x.next = m
        nxt.prev = m
        return m

    def _respread(self, x: _Marker) -> None:
        # grow the range after x until its label span exceeds k*k, then space it evenly
        k = 1
        y = x.next
        while y is not self._tail and y.label - x.label <= k * k:
            y = y.next
            k += 1
        gap = (y.label - x.label) // k
        if gap < 2:
            raise InvariantViolation('order-maintenance label space exhausted')
        label = x.label
        m = x.next
        while m is not y:
            label += gap
            m.label = label
            m = m.next
            self.relabels += 1
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug('respread %d markers after label %d', k - 1, x.label)

    def check(self) -> List[str]:
        """Marker nesting, label order and depth consistency; returns violation strings."""
        problems: List[str] = []
        stack: List[int] = []
        last = -1
        m = self._head.next
        seen = 0
        while m is not self._tail:
            if m.label <= last:
                problems.append(f'marker labels not increasing at node {m.owner}')
            last = m.label
            if m.opening:
                if stack and self._parent.get(m.owner) != stack[-1]:
                    problems.append(
                        f'node {m.owner} nested under {stack[-1]} but its link parent is {self._parent.get(m.owner)}')
                stack.append(m.owner)
                seen += 1
            else:
                if not stack or stack[-1] != m.owner:
                    problems.append(f'unbalanced out-marker for node {m.owner}')
                    break
                stack.pop()
            m = m.next
        if stack:
            problems.append(f'unclosed markers for nodes {stack}')
        if seen != len(self._in):
            problems.append(f'marker list holds {seen} nodes, index holds {len(self._in)}')
        for node, parent in self._parent.items():
            if node == self.root:
                continue
            if self._depth[node] != self._depth[parent] + 1:
                problems.append(f'link depth of {node} is {self._depth[node]}, parent {parent} has {self._depth[parent]}')
        return problems
