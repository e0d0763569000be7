import pytest

from app.ancestry import AncestryForest
from app.errors import InvariantViolation


def walk(parents, a, b):
    """Link distance from a down to b by explicit parent walk, None if a is not above b."""
    dist = 0
    while True:
        if b == a:
            return dist
        if b == 0:
            return None
        b = parents[b]
        dist += 1


def test_chain_order_and_distance():
    forest = AncestryForest(0)
    forest.attach_chain(0, [3, 2, 1])  # 3 -> 2 -> 1 -> 0
    assert forest.parent(3) == 2
    assert forest.link_depth(3) == 3
    assert forest.is_ancestor(1, 3)
    assert not forest.is_ancestor(3, 1)
    assert forest.link_distance(1, 3) == 2
    assert forest.link_distance(3, 3) == 0
    with pytest.raises(InvariantViolation):
        forest.link_distance(3, 1)


def test_remove_requires_a_leaf():
    forest = AncestryForest(0)
    forest.attach_chain(0, [2, 1])
    with pytest.raises(InvariantViolation):
        forest.remove_leaf(1)
    forest.remove_leaf(2)
    forest.remove_leaf(1)
    assert len(forest) == 1
    with pytest.raises(InvariantViolation):
        forest.remove_leaf(0)


def test_attach_twice_traps():
    forest = AncestryForest(0)
    forest.attach_chain(0, [1])
    with pytest.raises(InvariantViolation):
        forest.attach_chain(0, [1])
    with pytest.raises(InvariantViolation):
        forest.attach_chain(7, [8])


def test_crowded_inserts_respread_labels():
    forest = AncestryForest(0)
    for node in range(1, 200):
        forest.attach_chain(0, [node])
    assert forest.relabels > 0
    assert forest.check() == []
    assert all(forest.is_ancestor(0, node) for node in range(1, 200))


class Pool:
    """Set with O(1) random choice."""

    def __init__(self):
        self.items = []
        self.where = {}

    def __len__(self):
        return len(self.items)

    def add(self, v):
        self.where[v] = len(self.items)
        self.items.append(v)

    def discard(self, v):
        i = self.where.pop(v, None)
        if i is None:
            return
        last = self.items.pop()
        if last != v:
            self.items[i] = last
            self.where[last] = i

    def choice(self, rng):
        return self.items[rng.randrange(len(self.items))]


def random_ops(rng, forest, parents, count):
    kids = {0: 0}
    alive, leaves = Pool(), Pool()
    alive.add(0)
    next_id = 1
    for _ in range(count):
        if len(leaves) and rng.random() < 0.4:
            v = leaves.choice(rng)
            forest.remove_leaf(v)
            leaves.discard(v)
            alive.discard(v)
            del kids[v]
            above = parents.pop(v)
            kids[above] -= 1
            if above != 0 and kids[above] == 0:
                leaves.add(above)
            continue
        target = alive.choice(rng)
        chain = list(range(next_id, next_id + rng.randint(1, 3)))
        next_id += len(chain)
        forest.attach_chain(target, chain)
        leaves.discard(target)
        above = target
        for node in reversed(chain):
            parents[node] = above
            kids[above] += 1
            kids[node] = 0
            alive.add(node)
            above = node
        leaves.add(chain[0])


def test_fuzz_against_parent_walk(rng):
    for _ in range(20):
        forest = AncestryForest(0)
        parents = {}
        random_ops(rng, forest, parents, 300)
        assert forest.check() == []
        nodes = [0] + list(parents)
        for _ in range(400):
            a, b = rng.choice(nodes), rng.choice(nodes)
            expected = walk(parents, a, b)
            assert forest.is_ancestor(a, b) == (expected is not None)
            if expected is not None:
                assert forest.link_distance(a, b) == expected


@pytest.mark.slow
def test_fuzz_acceptance_scale(rng):
    forest = AncestryForest(0)
    parents = {}
    random_ops(rng, forest, parents, 100_000)
    assert forest.check() == []
    nodes = [0] + list(parents)
    for _ in range(20_000):
        a, b = rng.choice(nodes), rng.choice(nodes)
        expected = walk(parents, a, b)
        assert forest.is_ancestor(a, b) == (expected is not None)
