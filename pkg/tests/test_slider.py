import pytest

from conftest import CORPUS, de_bruijn, fibonacci_word, random_stream
from app.errors import InvariantViolation
from app.slider import SlidingIndex, evict_oldest
from app.tree_core import ROOT

# structural operations per shift: observed maximum 8.3 (random binary stream,
# window 65536) plus 10% headroom
OPS_PER_SHIFT = 9.2


def replay(data, capacity, paranoid=False):
    index = SlidingIndex(capacity, paranoid=paranoid)
    for k, c in enumerate(data, 1):
        index.shift(c)
        report = index.audit()
        assert report.ok, (data[:k], capacity, report.violations)
    return index


def test_growing_phase_only_appends():
    index = SlidingIndex(8)
    index.feed(b'abc')
    assert index.start == 0
    assert index.counters().node_deletions == 0
    assert len(index) == 3


def test_capacity_three_drops_oldest_leaf():
    index = SlidingIndex(3)
    index.feed(b'abcd')
    assert index.window_content() == b'bcd'
    assert index.start == 1
    assert index.tree.leaf_count == 3
    assert all(index.tree.node(i).suffix_start >= 1 for i in index.tree.iter_leaves())


def test_eviction_relabels_the_active_leaf():
    index = SlidingIndex(4)
    index.feed(b'aaaa')
    leaf = index.tree.active.node
    index.shift(b'a')
    tree = index.tree
    assert index.window_content() == b'aaaa'
    assert tree.leaf_count == 1
    assert tree.active.node == leaf
    assert tree.node(leaf).suffix_start == 1
    assert index.buffer_len == 3
    assert index.audit().ok


def test_eviction_merges_a_unary_parent():
    index = SlidingIndex(3)
    index.feed(b'aab')
    a = index.tree.node(ROOT).children[ord('a')]
    assert not index.tree.is_leaf(a)
    index.shift(b'c')
    tree = index.tree
    assert index.window_content() == b'abc'
    assert tree.internal_count == 0
    assert a not in tree.forest
    assert tree.node(tree.node(ROOT).children[ord('a')]).suffix_start == 1
    assert index.audit().ok


def test_eviction_keeps_a_branching_parent():
    index = SlidingIndex(5)
    index.feed(b'abacad')
    tree = index.tree
    a = tree.node(ROOT).children[ord('a')]
    assert len(tree.node(a).children) == 2
    assert tree.internal_count == 1
    assert index.audit().ok


def test_queue_head_mismatch_traps(s1):
    tree = s1.tree
    tree.window.push(ord('e'))
    tree.window.advance_start()
    with pytest.raises(InvariantViolation):
        evict_oldest(tree)


def test_shift_rejects_non_bytes():
    index = SlidingIndex(2)
    with pytest.raises(ValueError):
        index.shift(b'ab')
    with pytest.raises(ValueError):
        index.shift(300)


def test_paranoid_mode_audits_each_shift():
    index = SlidingIndex(4, paranoid=True)
    index.feed(b'abcabcabd')
    assert index.window_content() == b'cabd'


@pytest.mark.parametrize('capacity', [1, 2, 3, 5, 8, 13])
def test_audit_every_shift_small_windows(capacity):
    for data in CORPUS:
        replay(data[:120], capacity)


def test_audit_every_shift_random(rng):
    for _ in range(30):
        data = random_stream(rng, rng.randint(1, 200), rng.choice([1, 2, 3, 4]))
        replay(data, rng.choice([1, 2, 4, 7, 16, 64]))


def test_structural_work_is_linear():
    for data in CORPUS:
        for capacity in (2, 16, 64):
            index = SlidingIndex(capacity)
            index.feed(data)
            counters = index.counters()
            assert counters.shifts == len(data)
            assert counters.structural_ops <= OPS_PER_SHIFT * counters.shifts, (data[:20], capacity, counters)


def test_periodicity_holds_whenever_the_active_node_is_a_leaf():
    for data in CORPUS:
        index = SlidingIndex(32)
        for c in data:
            index.shift(c)
            info = index.period_info()
            if info is not None:
                assert info.p >= 1
                assert info.holds(index.tree)


def test_leaf_count_tracks_buffer(rng):
    index = SlidingIndex(16)
    for c in random_stream(rng, 500, 2):
        index.shift(c)
        assert index.tree.leaf_count == len(index) - index.buffer_len


@pytest.mark.slow
def test_periodic_replay_acceptance_scale():
    for data in (b'a' * 10_000, b'ab' * 5_000, fibonacci_word(10_000), de_bruijn(2, 13)[:10_000]):
        index = replay(data, 64)
        assert index.counters().structural_ops <= OPS_PER_SHIFT * len(data)
