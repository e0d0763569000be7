"""
PATRICIA suffix-tree arena over the live window.

Edges carry only the first character and a length derived from absolute
string depths. Characters in the middle of an edge are read through a
leaf's suffix position or an internal node's representative position
(`rep_pos`), which credits keep recent and eviction repairs keep live.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Set

from .ancestry import AncestryForest
from .errors import InvariantViolation
from .models import StructureCounters
from .window_store import WindowBuffer

logger = logging.getLogger('slider.tree')

ROOT = 0
NO_NODE = -1


class Node:
    __slots__ = ('leaf', 'parent', 'first_char', 'depth', 'suffix_start', 'children',
                 'suffix_link', 'rep_pos', 'credit', 'queue_prev', 'queue_next')

    def __init__(self, leaf: bool):
        self.leaf = leaf
        self.parent = NO_NODE
        self.first_char = -1
        self.depth = 0            # internal/root only; leaves are open-ended
        self.suffix_start = -1    # leaf only
        self.children: Optional[Dict[int, int]] = None if leaf else {}
        self.suffix_link = NO_NODE
        self.rep_pos = -1
        self.credit = False
        self.queue_prev = NO_NODE
        self.queue_next = NO_NODE


@dataclass(slots=True)
class ActivePoint:
    """B is the window's last `buffer_len` characters; it ends on the edge entering `node`."""
    node: int = ROOT
    buffer_len: int = 0


@dataclass(slots=True)
class ShiftCounters:
    node_creations: int = 0
    node_deletions: int = 0
    rescan_hops: int = 0
    credit_deposits: int = 0
    label_repairs: int = 0
    expand_steps: int = 0
    buffer_steps: int = 0
    shifts: int = 0


class SuffixTree:
    """Node arena plus the state the builder and slider share: active point, leaf queue, links tree."""

    def __init__(self, window: WindowBuffer):
        self.window = window
        self.nodes: List[Node] = []
        self._free: List[int] = []
        self._holders: Dict[int, Set[int]] = defaultdict(set)
        self.counters = ShiftCounters()
        root = self._allocate(leaf=False)
        assert root == ROOT
        self.nodes[ROOT].suffix_link = ROOT
        self.forest = AncestryForest(ROOT)
        self.active = ActivePoint()
        self.queue_head = NO_NODE
        self.queue_tail = NO_NODE
        self.leaf_count = 0
        self.internal_count = 0

    # -- arena ---------------------------------------------------------------

    def _allocate(self, leaf: bool) -> int:
        node = Node(leaf)
        if self._free:
            idx = self._free.pop()
            self.nodes[idx] = node
        else:
            idx = len(self.nodes)
            self.nodes.append(node)
        return idx

    def _release(self, idx: int) -> None:
        node = self.nodes[idx]
        if not node.leaf and node.rep_pos >= 0:
            holders = self._holders.get(node.rep_pos)
            if holders is not None:
                holders.discard(idx)
        self.nodes[idx] = None
        self._free.append(idx)
        self.counters.node_deletions += 1

    def node(self, idx: int) -> Node:
        return self.nodes[idx]

    def is_leaf(self, idx: int) -> bool:
        return self.nodes[idx].leaf

    def depth(self, idx: int) -> int:
        """String depth; a leaf reaches the end of the stream."""
        node = self.nodes[idx]
        if node.leaf:
            return self.window.n - node.suffix_start
        return node.depth

    def position(self, idx: int) -> int:
        """Start of some live occurrence of the node's string."""
        node = self.nodes[idx]
        return node.suffix_start if node.leaf else node.rep_pos

    def child(self, idx: int, c: int) -> Optional[int]:
        node = self.nodes[idx]
        if node.leaf:
            raise InvariantViolation(f'child() called on leaf {idx}')
        return node.children.get(c)

    def iter_leaves(self) -> Iterator[int]:
        idx = self.queue_head
        while idx != NO_NODE:
            yield idx
            idx = self.nodes[idx].queue_next

    # -- representative positions -----------------------------------------

    def _set_rep(self, idx: int, pos: int) -> None:
        node = self.nodes[idx]
        if node.rep_pos >= 0:
            holders = self._holders.get(node.rep_pos)
            if holders is not None:
                holders.discard(idx)
                if not holders:
                    del self._holders[node.rep_pos]
        node.rep_pos = pos
        self._holders[pos].add(idx)

    def deposit_credit(self, idx: int, fresh: int) -> None:
        """Refresh rep_pos along the path upwards, passing on every second deposit."""
        nodes = self.nodes
        while idx != ROOT:
            node = nodes[idx]
            self._set_rep(idx, fresh)
            self.counters.credit_deposits += 1
            if not node.credit:
                node.credit = True
                return
            node.credit = False
            idx = node.parent

    def refresh_expired(self, pos: int) -> None:
        """Re-point every internal node whose rep_pos is `pos` (just evicted) at a live child's occurrence."""
        holders = self._holders.pop(pos, None)
        if not holders:
            return
        nodes = self.nodes
        for idx in list(holders):
            node = nodes[idx]
            node.rep_pos = -1
            for child in node.children.values():
                cpos = self.position(child)
                if cpos != pos and cpos >= 0:
                    self._set_rep(idx, cpos)
                    break
            else:
                raise InvariantViolation(f'node {idx} has no live child occurrence after evicting {pos}')
            self.counters.label_repairs += 1

    def live_position(self, idx: int) -> int:
        """Like position(), but never returns an expired representative."""
        node = self.nodes[idx]
        if node.leaf:
            return node.suffix_start
        if node.rep_pos < self.window.start:
            # stale label: any descendant leaf spells a string with this prefix
            below = idx
            while not self.nodes[below].leaf:
                below = next(iter(self.nodes[below].children.values()))
            logger.warning('stale rep_pos %d on node %d repaired from leaf %d',
                           node.rep_pos, idx, below)
            self._set_rep(idx, self.nodes[below].suffix_start)
            self.counters.label_repairs += 1
        return node.rep_pos

    def edge_char(self, idx: int, offset: int) -> int:
        """Character at string offset `offset` of the path spelled by node idx."""
        return self.window.char_at(self.live_position(idx) + offset)

    # -- leaf queue ----------------------------------------------------------

    def _queue_append(self, idx: int) -> None:
        node = self.nodes[idx]
        node.queue_prev = self.queue_tail
        node.queue_next = NO_NODE
        if self.queue_tail == NO_NODE:
            self.queue_head = idx
        else:
            self.nodes[self.queue_tail].queue_next = idx
        self.queue_tail = idx

    def _queue_unlink(self, idx: int) -> None:
        node = self.nodes[idx]
        if node.queue_prev == NO_NODE:
            self.queue_head = node.queue_next
        else:
            self.nodes[node.queue_prev].queue_next = node.queue_next
        if node.queue_next == NO_NODE:
            self.queue_tail = node.queue_prev
        else:
            self.nodes[node.queue_next].queue_prev = node.queue_prev
        node.queue_prev = node.queue_next = NO_NODE

    # -- structural edits ----------------------------------------------------

    def insert_leaf(self, parent: int, suffix_start: int) -> int:
        pnode = self.nodes[parent]
        if pnode.leaf:
            raise InvariantViolation(f'insert_leaf under leaf {parent}')
        c = self.window.char_at(suffix_start + pnode.depth)
        if c in pnode.children:
            raise InvariantViolation(f'duplicate branch {c!r} under node {parent}')
        idx = self._allocate(leaf=True)
        leaf = self.nodes[idx]
        leaf.parent = parent
        leaf.first_char = c
        leaf.suffix_start = suffix_start
        pnode.children[c] = idx
        self._queue_append(idx)
        self.leaf_count += 1
        self.counters.node_creations += 1
        self.deposit_credit(parent, suffix_start)
        return idx

    def split_edge(self, idx: int, split_depth: int, occurrence: int) -> int:
        """Insert an internal node at `split_depth` on the edge entering idx; `occurrence` spells its string."""
        node = self.nodes[idx]
        parent = node.parent
        pnode = self.nodes[parent]
        if not pnode.depth < split_depth < self.depth(idx):
            raise InvariantViolation(
                f'split depth {split_depth} outside ({pnode.depth}, {self.depth(idx)}) for node {idx}')
        branch = self.edge_char(idx, split_depth)
        gamma = self._allocate(leaf=False)
        gnode = self.nodes[gamma]
        gnode.parent = parent
        gnode.first_char = node.first_char
        gnode.depth = split_depth
        gnode.children[branch] = idx
        pnode.children[node.first_char] = gamma
        node.parent = gamma
        node.first_char = branch
        self._set_rep(gamma, occurrence)
        self.internal_count += 1
        self.counters.node_creations += 1
        return gamma

    def merge_unary(self, pi: int) -> int:
        """Splice out internal node pi that has a single child; returns the child."""
        pnode = self.nodes[pi]
        if pi == ROOT or pnode.leaf or len(pnode.children) != 1:
            raise InvariantViolation(f'merge_unary on node {pi} which is not a unary internal node')
        sigma = next(iter(pnode.children.values()))
        snode = self.nodes[sigma]
        grand = self.nodes[pnode.parent]
        snode.first_char = pnode.first_char
        snode.parent = pnode.parent
        grand.children[pnode.first_char] = sigma
        self.internal_count -= 1
        self._release(pi)
        return sigma

    def remove_leaf(self, idx: int) -> int:
        """Detach a leaf from its parent and the queue; returns the former parent."""
        leaf = self.nodes[idx]
        if not leaf.leaf:
            raise InvariantViolation(f'remove_leaf on internal node {idx}')
        parent = leaf.parent
        del self.nodes[parent].children[leaf.first_char]
        self._queue_unlink(idx)
        self.leaf_count -= 1
        self._release(idx)
        return parent

    def relabel_leaf(self, idx: int, suffix_start: int) -> None:
        """Reassign a leaf to a younger suffix along the same edge and move it to the queue tail."""
        self._queue_unlink(idx)
        self.nodes[idx].suffix_start = suffix_start
        self._queue_append(idx)

    def snapshot(self) -> StructureCounters:
        c = self.counters
        return StructureCounters(
            node_creations=c.node_creations,
            node_deletions=c.node_deletions,
            rescan_hops=c.rescan_hops,
            credit_deposits=c.credit_deposits,
            label_repairs=c.label_repairs,
            marker_ops=self.forest.marker_ops,
            marker_relabels=self.forest.relabels,
            expand_steps=c.expand_steps,
            buffer_steps=c.buffer_steps,
            shifts=c.shifts,
        )
