"""
Occurrence reporting.

The finalized part of the answer is the leaf set below the locus of Q.
Occurrences that start inside the implicit buffer B have no leaves; they
are recovered from the active point, either through the links tree (the
active node is internal) or from the period the active leaf imposes on
the end of the stream.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import QueryError
from .matcher import kmp_find
from .models import QueryCounters, QueryResult
from .tree_core import ROOT, SuffixTree

logger = logging.getLogger('slider.query')


@dataclass(slots=True)
class Locus:
    node: int
    string_depth_of_match: int


@dataclass(slots=True)
class PeriodInfo:
    """The active node is a leaf storing x; [x, n) then has period p."""
    x: int
    p: int

    def holds(self, tree: SuffixTree) -> bool:
        window = tree.window
        return all(window.char_at(j) == window.char_at(j + self.p)
                   for j in range(self.x, window.n - self.p))


@dataclass
class Survey:
    """Leaves and internal nodes of the locus subtree, gathered in one pass."""
    leaves: List[int] = field(default_factory=list)      # suffix starts
    internals: List[int] = field(default_factory=list)   # node ids


def _check_query(q: bytes) -> bytes:
    if isinstance(q, str):
        raise QueryError('query must be bytes')
    if not q:
        raise QueryError('query must not be empty')
    return bytes(q)


def locate_locus(tree: SuffixTree, q: bytes, counters: Optional[QueryCounters] = None) -> Optional[Locus]:
    """
    Blind descent: only the first character of each edge is compared, the
    rest of the edge is skipped by depth. A returned locus is a candidate
    until one of its occurrences has been compared with q.
    """
    q = _check_query(q)
    m = len(q)
    nodes = tree.nodes
    n = tree.window.n
    idx = ROOT
    visited = 1
    try:
        while True:
            node = nodes[idx]
            if node.leaf:
                if n - node.suffix_start < m:
                    return None
                return Locus(idx, m)
            if node.depth >= m:
                return Locus(idx, m)
            nxt = node.children.get(q[node.depth])
            if nxt is None:
                return None
            idx = nxt
            visited += 1
    finally:
        if counters is not None:
            counters.visited_nodes += visited


def verify_locus(tree: SuffixTree, locus: Locus, q: bytes, counters: Optional[QueryCounters] = None) -> bool:
    if counters is not None:
        counters.scan_chars += len(q)
    return tree.window.substring_equals(tree.live_position(locus.node), q)


def survey(tree: SuffixTree, locus: Locus, counters: Optional[QueryCounters] = None) -> Survey:
    nodes = tree.nodes
    found = Survey()
    stack = [locus.node]
    visited = 0
    while stack:
        idx = stack.pop()
        node = nodes[idx]
        if node.leaf:
            found.leaves.append(node.suffix_start)
        else:
            found.internals.append(idx)
            stack.extend(node.children.values())
        visited += 1
    if counters is not None:
        # the locus itself was counted by the descent
        counters.visited_nodes += visited - 1
    return found


def collect_finalized(tree: SuffixTree, locus: Locus, counters: Optional[QueryCounters] = None) -> List[int]:
    return survey(tree, locus, counters).leaves


def buffer_occurrences(tree: SuffixTree, locus: Locus, q: bytes,
                       found: Optional[Survey] = None,
                       counters: Optional[QueryCounters] = None) -> List[int]:
    """Occurrences of q that start inside B, i.e. at or after n - |B|."""
    m = len(q)
    window = tree.window
    n = window.n
    beta, b = tree.active.node, tree.active.buffer_len
    if b < m:
        return []
    if b == m:
        return [n - b] if beta == locus.node else []
    if found is None:
        found = survey(tree, locus)
    out: List[int] = []
    bnode = tree.nodes[beta]

    if not bnode.leaf:
        # q starts at offset i of B iff the locus node is i link hops above beta
        forest = tree.forest
        checks = 0
        for alpha in found.internals:
            checks += 1
            if forest.is_ancestor(alpha, beta):
                i = forest.link_distance(alpha, beta)
                if i + m <= b:
                    out.append(n - b + i)
        if counters is not None:
            counters.link_checks += checks
        return out

    x = bnode.suffix_start
    p = (n - b) - x
    if p <= m:
        # every occurrence in B is some hit y < p pumped by multiples of p
        lo = n - b
        length = min(b, p + m - 1)
        if counters is not None:
            counters.scan_chars += length
        for y in kmp_find(window.slice(lo, lo + length), q):
            s = y
            while s + m <= b:
                out.append(lo + s)
                s += p
    else:
        for z in found.leaves:
            if x <= z <= n - b - 1:
                s = z + p
                while s + m <= n:
                    out.append(s)
                    s += p
    return out


def find(tree: SuffixTree, q: bytes) -> QueryResult:
    """All window positions where q occurs, ascending and absolute."""
    q = _check_query(q)
    counters = QueryCounters()
    locus = locate_locus(tree, q, counters)
    if locus is None or not verify_locus(tree, locus, q, counters):
        # no finalized occurrence means no occurrence at all
        return QueryResult(counters=counters, query_length=len(q))
    found = survey(tree, locus, counters)
    extra = buffer_occurrences(tree, locus, q, found, counters)
    positions = sorted(found.leaves + extra)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug('find %r: %d finalized, %d in buffer, work %d',
                     q, len(found.leaves), len(extra), counters.work)
    return QueryResult(positions=positions, counters=counters, query_length=len(q))


def contains(tree: SuffixTree, q: bytes) -> bool:
    q = _check_query(q)
    locus = locate_locus(tree, q)
    return locus is not None and verify_locus(tree, locus, q)


def period_info(tree: SuffixTree) -> Optional[PeriodInfo]:
    beta, b = tree.active.node, tree.active.buffer_len
    node = tree.nodes[beta]
    if not node.leaf or b == 0:
        return None
    x = node.suffix_start
    return PeriodInfo(x=x, p=(tree.window.n - b) - x)
