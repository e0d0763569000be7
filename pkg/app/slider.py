"""
Sliding suffix tree facade: shift appends through the builder and then
evicts the oldest suffix once the window is over capacity.
"""

import logging
from typing import Optional, Union

from .builder import add_char, relocate
from .errors import InvariantViolation
from .models import AuditReport, IndexStats, QueryResult, StructureCounters
from .oracle import audit
from .tree_core import NO_NODE, ROOT, SuffixTree
from .window_store import WindowBuffer
from . import query

logger = logging.getLogger('slider.slider')


def evict_oldest(tree: SuffixTree) -> None:
    """Remove the suffix starting at window.start (the head of the leaf queue)."""
    window = tree.window
    nodes = tree.nodes
    head = tree.queue_head
    expired = window.start
    if head == NO_NODE or nodes[head].suffix_start != expired:
        found = None if head == NO_NODE else nodes[head].suffix_start
        raise InvariantViolation(f'leaf queue head holds {found}, expected the oldest suffix {expired}')
    active = tree.active

    if active.node == head:
        # B is a prefix of the evicted suffix and has no other finalized occurrence:
        # the leaf now carries the suffix B and B loses its first character
        b = active.buffer_len
        n = window.n
        parent = nodes[head].parent
        tree.relabel_leaf(head, n - b)
        window.advance_start()
        point = relocate(tree, parent, n - b + 1, n)
        active.node = point.node
        active.buffer_len = point.buffer_len
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug('evict %d: relabel leaf %d to %d, |B| %d -> %d',
                         expired, head, n - b, b, active.buffer_len)
    else:
        parent = tree.remove_leaf(head)
        window.advance_start()
        if parent != ROOT and len(nodes[parent].children) == 1:
            tree.forest.remove_leaf(parent)
            sigma = tree.merge_unary(parent)
            if active.node == parent:
                active.node = sigma
            if logger.isEnabledFor(logging.DEBUG):
                logger.debug('evict %d: leaf %d removed, parent %d merged into %d',
                             expired, head, parent, sigma)
        elif logger.isEnabledFor(logging.DEBUG):
            logger.debug('evict %d: leaf %d removed', expired, head)
    tree.refresh_expired(expired)


class SlidingIndex:
    """Substring index over the last `capacity` bytes of an unbounded stream."""

    def __init__(self, capacity: int, paranoid: bool = False):
        self.capacity = capacity
        self.window = WindowBuffer(capacity)
        self.tree = SuffixTree(self.window)
        self.paranoid = paranoid

    def __len__(self) -> int:
        return len(self.window)

    def __repr__(self) -> str:
        return (f'SlidingIndex(capacity={self.capacity}, n={self.window.n}, '
                f'start={self.window.start}, b={self.tree.active.buffer_len})')

    @property
    def n(self) -> int:
        return self.window.n

    @property
    def start(self) -> int:
        return self.window.start

    @property
    def buffer_len(self) -> int:
        return self.tree.active.buffer_len

    def shift(self, c: Union[int, bytes]) -> None:
        if isinstance(c, (bytes, bytearray)):
            if len(c) != 1:
                raise ValueError('shift takes exactly one byte')
            c = c[0]
        if not 0 <= c <= 255:
            raise ValueError(f'not a byte: {c!r}')
        add_char(self.tree, c)
        self.tree.counters.shifts += 1
        if len(self.window) > self.capacity:
            evict_oldest(self.tree)
        if self.paranoid:
            report = self.audit()
            if not report.ok:
                for line in report.violations:
                    logger.warning('audit after shift %d: %s', self.window.n, line)
                raise InvariantViolation(report.violations[0])

    def feed(self, data: bytes) -> None:
        for c in data:
            self.shift(c)

    def find(self, q: bytes) -> QueryResult:
        return query.find(self.tree, q)

    def contains(self, q: bytes) -> bool:
        return query.contains(self.tree, q)

    def period_info(self) -> Optional[query.PeriodInfo]:
        return query.period_info(self.tree)

    def window_content(self) -> bytes:
        return self.window.content()

    def counters(self) -> StructureCounters:
        return self.tree.snapshot()

    def stats(self) -> IndexStats:
        return IndexStats(
            capacity=self.capacity,
            n=self.window.n,
            start=self.window.start,
            fill=len(self.window),
            b=self.tree.active.buffer_len,
            leaves=self.tree.leaf_count,
            internal=self.tree.internal_count,
        )

    def audit(self) -> AuditReport:
        return audit(self.tree)
