"""
Brute-force references and the structural audit.

The reference functions only ever look at plain bytes extracted from the
window; they share no code with the index.
"""

import logging
from typing import Dict, List, Tuple

from .models import AuditReport
from .query import period_info
from .tree_core import ROOT, SuffixTree

logger = logging.getLogger('slider.oracle')

# trees small enough for the quadratic ancestor cross-check
_PAIRWISE_LIMIT = 64


def naive_find(text: bytes, q: bytes) -> List[int]:
    if not q:
        raise ValueError('empty query')
    m = len(q)
    return [s for s in range(len(text) - m + 1) if text[s:s + m] == q]


def naive_longest_repeated_suffix(text: bytes) -> int:
    size = len(text)
    for b in range(size - 1, 0, -1):
        if text.find(text[size - b:]) < size - b:
            return b
    return 0


def _encode_group(text: bytes, group: List[int], depth: int):
    if len(group) == 1:
        return ('leaf', group[0])
    # the explicit suffixes are never prefixes of each other, so text[s + d] exists
    d = depth
    while len({text[s + d] for s in group}) == 1:
        d += 1
    return ('node', d, _encode_children(text, group, d))


def _encode_children(text: bytes, group: List[int], depth: int) -> Tuple:
    buckets: Dict[int, List[int]] = {}
    for s in group:
        buckets.setdefault(text[s + depth], []).append(s)
    return tuple(sorted((c, _encode_group(text, sub, depth + 1)) for c, sub in buckets.items()))


def naive_suffix_tree(text: bytes, implicit_count: int):
    """
    Canonical encoding of the suffix tree over every suffix of text except
    the `implicit_count` shortest ones. Internal nodes encode as
    ('node', depth, ((char, child), ...)) and leaves as ('leaf', offset).
    """
    explicit = list(range(len(text) - implicit_count))
    return ('node', 0, _encode_children(text, explicit, 0))


def encode_tree(tree: SuffixTree):
    """The same canonical encoding, read off the index with window-relative leaf offsets."""
    nodes = tree.nodes
    start = tree.window.start

    def enc(idx: int):
        node = nodes[idx]
        if node.leaf:
            return ('leaf', node.suffix_start - start)
        return ('node', node.depth, tuple(sorted((c, enc(child)) for c, child in node.children.items())))

    return enc(ROOT)


def audit(tree: SuffixTree) -> AuditReport:
    """Every structural invariant of the index; an empty report means the index is sound."""
    problems: List[str] = []
    try:
        _audit_into(tree, problems)
    except Exception as exc:  # a corrupted tree may not even be walkable
        problems.append(f'audit aborted: {type(exc).__name__}: {exc}')
    if problems:
        logger.debug('audit found %d violations', len(problems))
    return AuditReport(violations=problems)


def _audit_into(tree: SuffixTree, problems: List[str]) -> None:
    window = tree.window
    n, start = window.n, window.start
    text = window.content()
    nodes = tree.nodes

    def spell(pos: int, length: int) -> bytes:
        return text[pos - start:pos - start + length]

    # walk from the root, carrying each node's spelled string
    spelled: Dict[int, bytes] = {ROOT: b''}
    leaf_starts: List[int] = []
    internals: List[int] = []
    stack = [ROOT]
    while stack:
        idx = stack.pop()
        node = nodes[idx]
        if node.leaf:
            s = node.suffix_start
            if not start <= s < n:
                problems.append(f'leaf {idx}: suffix_start {s} outside window [{start}, {n})')
            leaf_starts.append(s)
            continue
        if idx != ROOT:
            internals.append(idx)
            if len(node.children) < 2:
                problems.append(f'node {idx}: internal node with {len(node.children)} children')
        for c, child in node.children.items():
            cnode = nodes[child]
            if cnode is None:
                problems.append(f'node {idx}: child {child} under {c!r} was released')
                continue
            if cnode.parent != idx:
                problems.append(f'node {child}: parent is {cnode.parent}, but it hangs under {idx}')
            if cnode.first_char != c:
                problems.append(f'node {child}: first_char {cnode.first_char} but keyed {c} under node {idx}')
            if cnode.leaf:
                pos, depth = cnode.suffix_start, n - cnode.suffix_start
            else:
                pos, depth = cnode.rep_pos, cnode.depth
                if not start <= pos <= n - depth:
                    problems.append(f'node {child}: rep_pos {pos} is not a live occurrence of depth {depth}')
                    continue
            if depth <= node.depth:
                problems.append(f'node {child}: depth {depth} not below parent depth {node.depth}')
                continue
            s = spell(pos, depth)
            if s[:node.depth] != spelled[idx] or s[node.depth] != c:
                problems.append(f'node {child}: occurrence at {pos} does not spell the path through {idx}')
            spelled[child] = s
            stack.append(child)

    if problems:
        return

    if tree.leaf_count != len(leaf_starts):
        problems.append(f'leaf_count {tree.leaf_count} but {len(leaf_starts)} leaves reachable')
    if tree.internal_count != len(internals):
        problems.append(f'internal_count {tree.internal_count} but {len(internals)} internal nodes reachable')

    queued = [nodes[idx].suffix_start for idx in tree.iter_leaves()]
    if any(a >= b for a, b in zip(queued, queued[1:])):
        problems.append('leaf queue is not ordered by suffix_start')
    if sorted(queued) != sorted(leaf_starts):
        problems.append('leaf queue and tree hold different leaves')
    if queued and queued[0] != start:
        problems.append(f'leaf queue head holds {queued[0]}, window starts at {start}')

    # suffix links and the links tree
    forest = tree.forest
    for idx in internals:
        link = nodes[idx].suffix_link
        target = nodes[link] if 0 <= link < len(nodes) else None
        if target is None or target.leaf:
            problems.append(f'node {idx}: suffix link {link} is not an internal node')
            continue
        if target.depth != nodes[idx].depth - 1:
            problems.append(f'node {idx}: suffix link to depth {target.depth} from depth {nodes[idx].depth}')
        elif spelled.get(link) != spelled[idx][1:]:
            problems.append(f'node {idx}: suffix link target {link} spells the wrong string')
        if idx not in forest:
            problems.append(f'node {idx}: missing from the links tree')
        elif forest.parent(idx) != link:
            problems.append(f'node {idx}: links-tree parent {forest.parent(idx)} but suffix link {link}')
    problems.extend(forest.check())
    if set(forest.nodes()) != set(internals) | {ROOT}:
        problems.append('links tree and suffix tree hold different internal nodes')
    if len(internals) <= _PAIRWISE_LIMIT:
        _check_ancestry_pairs(tree, [ROOT] + internals, problems)

    # active point
    active = tree.active
    b = active.buffer_len
    expected_b = naive_longest_repeated_suffix(text)
    if b != expected_b:
        problems.append(f'|B| is {b}, longest repeated suffix has length {expected_b}')
    if tree.leaf_count != len(text) - b:
        problems.append(f'{tree.leaf_count} leaves for {len(text)} characters and |B| = {b}')
    beta = nodes[active.node] if 0 <= active.node < len(nodes) else None
    if beta is None:
        problems.append(f'active node {active.node} does not exist')
    elif b == 0:
        if active.node != ROOT:
            problems.append(f'|B| = 0 but the active node is {active.node}')
    else:
        low = nodes[beta.parent].depth if active.node != ROOT else -1
        high = n - beta.suffix_start if beta.leaf else beta.depth
        if not low < b <= high:
            problems.append(f'|B| = {b} does not end on the edge into {active.node} ({low}, {high}]')
        elif spelled.get(active.node, b'')[:b] != text[len(text) - b:]:
            problems.append(f'active node {active.node} does not spell B')

    info = period_info(tree)
    if info is not None and not info.holds(tree):
        problems.append(f'stream is not {info.p}-periodic from {info.x}')

    if problems:
        return
    if encode_tree(tree) != naive_suffix_tree(text, b):
        problems.append('tree is not isomorphic to the brute-force suffix tree of the window')


def _check_ancestry_pairs(tree: SuffixTree, internals: List[int], problems: List[str]) -> None:
    nodes = tree.nodes
    forest = tree.forest
    for desc in internals:
        # explicit parent walk along suffix links
        hops = {}
        cur, dist = desc, 0
        while True:
            hops[cur] = dist
            if cur == ROOT:
                break
            cur = nodes[cur].suffix_link
            dist += 1
            if dist > len(internals):
                problems.append(f'node {desc}: suffix links do not reach the root')
                return
        for anc in internals:
            expected = anc in hops
            if forest.is_ancestor(anc, desc) != expected:
                problems.append(f'is_ancestor({anc}, {desc}) disagrees with the suffix-link walk')
            elif expected and forest.link_distance(anc, desc) != hops[anc]:
                problems.append(f'link_distance({anc}, {desc}) is not {hops[anc]}')
