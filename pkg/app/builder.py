"""
Online construction: one character per call, two-state automaton.

Buffering extends B along an existing path; expanding inserts the
missing branches for the suffixes of B that cannot be followed by the
new character, shortening B by one per branch and relocating through
suffix links. New internal nodes created in one cascade form a chain
that is linked and attached to the links tree as soon as the cascade
reaches an existing node.
"""

import logging
from dataclasses import dataclass, field
from typing import List

from .errors import InvariantViolation
from .tree_core import ROOT, ActivePoint, SuffixTree

logger = logging.getLogger('slider.builder')


@dataclass
class ChainBuffer:
    nodes: List[int] = field(default_factory=list)  # creation order
    attach_target: int = -1

    @property
    def open(self) -> bool:
        return bool(self.nodes) and self.attach_target < 0


def rescan(tree: SuffixTree, start_node: int, lo: int, hi: int) -> ActivePoint:
    """
    Skip/count descent for T[lo:hi], which is known to be spelled below
    start_node (whose own string is T[lo:lo + depth(start_node)]).
    Only first characters are inspected.
    """
    length = hi - lo
    nodes = tree.nodes
    window = tree.window
    node = start_node
    while True:
        d = nodes[node].depth
        if d == length:
            return ActivePoint(node, length)
        if d > length:
            raise InvariantViolation(f'rescan started below its target: depth {d} > {length}')
        nxt = nodes[node].children.get(window.char_at(lo + d))
        if nxt is None:
            raise InvariantViolation(f'rescan found no branch below node {node} at depth {d}')
        tree.counters.rescan_hops += 1
        if nodes[nxt].leaf or nodes[nxt].depth >= length:
            return ActivePoint(nxt, length)
        node = nxt


def relocate(tree: SuffixTree, parent: int, lo: int, hi: int) -> ActivePoint:
    """Active point for T[lo:hi], whose first character extended the string of `parent`."""
    if parent == ROOT:
        return rescan(tree, ROOT, lo, hi)
    return rescan(tree, tree.nodes[parent].suffix_link, lo, hi)


def add_char(tree: SuffixTree, c: int) -> ChainBuffer:
    """Append byte c to the window and update the tree and the active point."""
    window = tree.window
    window.push(c)
    nodes = tree.nodes
    active = tree.active
    chain = ChainBuffer()
    # B occupies [tail - b, tail); c sits at tail
    tail = window.n - 1

    while True:
        beta, b = active.node, active.buffer_len
        bnode = nodes[beta]

        if not bnode.leaf and bnode.depth == b:
            if chain.open:
                _close_chain(tree, chain, beta)
            nxt = bnode.children.get(c)
            if nxt is not None:
                tree.counters.buffer_steps += 1
                active.node = nxt
                active.buffer_len = b + 1
                return chain
            tree.counters.expand_steps += 1
            tree.insert_leaf(beta, tail - b)
            if b == 0:
                return chain
            # after an explicit node every shorter suffix of B ends on an explicit node
            active.node = bnode.suffix_link
            active.buffer_len = b - 1
            continue

        if tree.edge_char(beta, b) == c:
            if chain.open:
                raise InvariantViolation('cascade resumed buffering mid-edge with an open chain')
            tree.counters.buffer_steps += 1
            active.buffer_len = b + 1
            return chain

        if chain.attach_target >= 0:
            raise InvariantViolation('edge split after the chain was attached')
        tree.counters.expand_steps += 1
        gamma = tree.split_edge(beta, b, tail - b)
        if chain.nodes:
            nodes[chain.nodes[-1]].suffix_link = gamma
        chain.nodes.append(gamma)
        tree.insert_leaf(gamma, tail - b)
        point = relocate(tree, nodes[gamma].parent, tail - b + 1, tail)
        active.node = point.node
        active.buffer_len = point.buffer_len


def _close_chain(tree: SuffixTree, chain: ChainBuffer, target: int) -> None:
    nodes = tree.nodes
    last = chain.nodes[-1]
    if nodes[target].depth != nodes[last].depth - 1:
        raise InvariantViolation(
            f'suffix link {last}->{target} joins depths {nodes[last].depth} and {nodes[target].depth}')
    nodes[last].suffix_link = target
    chain.attach_target = target
    tree.forest.attach_chain(target, chain.nodes)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug('attached chain %s under %d', chain.nodes, target)
