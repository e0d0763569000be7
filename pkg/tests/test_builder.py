import pytest

from conftest import CORPUS, de_bruijn, fibonacci_word, random_stream
from app.builder import add_char, rescan
from app.errors import InvariantViolation
from app.oracle import audit, naive_longest_repeated_suffix
from app.slider import SlidingIndex
from app.tree_core import ROOT, SuffixTree
from app.window_store import WindowBuffer


def grow(data, capacity=64):
    tree = SuffixTree(WindowBuffer(capacity))
    chains = [add_char(tree, c) for c in data]
    return tree, chains


def test_cascade_forms_one_chain():
    tree, chains = grow(b'abcabd')
    last = chains[-1]
    assert len(last.nodes) == 2
    assert last.attach_target == ROOT
    ab, b = last.nodes
    assert tree.node(ab).depth == 2 and tree.node(b).depth == 1
    assert tree.node(ab).suffix_link == b
    assert tree.forest.link_distance(ROOT, ab) == 2


def test_buffering_does_not_create_nodes():
    tree, chains = grow(b'aaaa')
    assert all(not chain.nodes for chain in chains)
    assert tree.leaf_count == 1
    assert tree.node(tree.active.node).leaf
    assert tree.active.buffer_len == 3
    assert tree.counters.buffer_steps == 3


def test_rescan_lands_on_the_edge(s1):
    tree = s1.tree
    # "ab" from the root ends exactly on the node "ab"
    point = rescan(tree, ROOT, 6, 8)
    assert tree.node(point.node).depth == 2
    assert point.buffer_len == 2
    # "bda" ends inside the leaf edge of suffix 4
    point = rescan(tree, ROOT, 4, 7)
    assert tree.node(point.node).suffix_start == 4


def test_rescan_missing_branch_traps(s1):
    tree = s1.tree
    tree.window.push(ord('z'))
    with pytest.raises(InvariantViolation):
        rescan(tree, ROOT, 8, 9)


@pytest.mark.parametrize('data', [
    b'abcabdab', b'mississippi', b'aabaabaabb', b'abababab',
    fibonacci_word(40), de_bruijn(2, 4), de_bruijn(3, 3),
])
def test_every_prefix_is_sound(data):
    tree = SuffixTree(WindowBuffer(len(data)))
    for k, c in enumerate(data, 1):
        add_char(tree, c)
        report = audit(tree)
        assert report.ok, (data[:k], report.violations)
        assert tree.active.buffer_len == naive_longest_repeated_suffix(data[:k])


def test_random_growth(rng):
    for _ in range(40):
        data = random_stream(rng, rng.randint(1, 60), rng.choice([1, 2, 4]))
        tree, _ = grow(data, capacity=len(data))
        assert audit(tree).ok, data


# expand iterations + buffering steps + rescan hops per shift
BUILDER_STEPS_PER_SHIFT = 4


@pytest.mark.parametrize('capacity', [1, 2, 8, 64, 1024])
def test_builder_work_is_linear(rng, capacity):
    streams = list(CORPUS) + [random_stream(rng, 600, sigma) for sigma in (1, 2, 4, 26)]
    for data in streams:
        index = SlidingIndex(capacity)
        index.feed(data)
        counters = index.counters()
        assert counters.shifts == len(data)
        # every shift ends in exactly one buffering step or one expansion at b == 0
        assert counters.expand_steps >= 1
        assert counters.buffer_steps <= counters.shifts
        assert counters.builder_work <= BUILDER_STEPS_PER_SHIFT * counters.shifts, (data[:20], capacity, counters)
