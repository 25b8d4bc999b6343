import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commonforest.errors import NotConnected
from commonforest.forest import (
    Forest,
    component_vertex_sets,
    random_tree,
    root_at,
    tree_canonical,
)
from commonforest.pairwise import (
    mcs_rooted_anchored,
    mcs_trees,
    supertree2,
    supertree2_rooted,
)
from commonforest.verify import check_embedding

from helpers import brute_common_rooted_anchored, connected_subsets


def brute_mcs_size(t1: Forest, t2: Forest) -> int:
    """Largest connected common induced subtree by subset enumeration."""
    codes2 = set()
    best = 0
    for vs in connected_subsets(t2):
        codes2.add(tree_canonical(t2.induced(list(vs))).code)
    for vs in connected_subsets(t1):
        sub = t1.induced(list(vs))
        if tree_canonical(sub).code in codes2:
            best = max(best, len(vs))
    return best


class TestMcsRootedAnchored:
    def test_two_leaves(self):
        a = root_at(Forest.path(2), [0])
        b = root_at(Forest.path(3), [0])
        res = mcs_rooted_anchored(a, 1, b, 2)
        assert res.size == 1

    def test_isomorphic_subtrees(self):
        a = root_at(Forest.path(4), [0])
        b = root_at(Forest.path(5), [0])
        res = mcs_rooted_anchored(a, 1, b, 2)  # P3 below vs P3 below
        assert res.size == 3

    def test_star_center_vs_path_end(self):
        a = root_at(Forest.star(3), [0])
        b = root_at(Forest.path(4), [0])
        res = mcs_rooted_anchored(a, 0, b, 0)
        assert res.size == 2
        assert res.size == brute_common_rooted_anchored(a.base, 0, b.base, 0)

    def test_against_bruteforce_random(self):
        rng = random.Random(5)
        for _ in range(25):
            t1 = random_tree(rng.randrange(10**6), rng.randint(1, 6))
            t2 = random_tree(rng.randrange(10**6), rng.randint(1, 6))
            u, v = rng.randrange(t1.n), rng.randrange(t2.n)
            a, b = root_at(t1, [u]), root_at(t2, [v])
            got = mcs_rooted_anchored(a, u, b, v)
            assert got.size == brute_common_rooted_anchored(t1, u, t2, v)
            assert check_embedding(got.tree, t1, got.embed1)
            assert check_embedding(got.tree, t2, got.embed2)


class TestMcsTrees:
    def test_identity(self):
        t = random_tree(3, 7)
        assert mcs_trees(t, t).size == 7

    def test_paths(self):
        assert mcs_trees(Forest.path(5), Forest.path(9)).size == 5

    def test_star_vs_path(self):
        res = mcs_trees(Forest.star(3), Forest.path(4))
        assert res.size == 3  # a common P3

    def test_symmetry_and_monotonicity(self):
        rng = random.Random(11)
        for _ in range(20):
            t1 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            t2 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            s12 = mcs_trees(t1, t2).size
            assert s12 == mcs_trees(t2, t1).size
            assert s12 <= min(t1.n, t2.n)

    def test_against_bruteforce(self):
        rng = random.Random(99)
        for _ in range(15):
            t1 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            t2 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            res = mcs_trees(t1, t2)
            assert res.size == brute_mcs_size(t1, t2)
            assert check_embedding(res.tree, t1, res.embed1)
            assert check_embedding(res.tree, t2, res.embed2)
            assert len(component_vertex_sets(res.tree)) == 1

    def test_rejects_forest(self):
        with pytest.raises(NotConnected):
            mcs_trees(Forest.from_edges(2, []), Forest.path(2))

    def test_rejects_empty(self):
        with pytest.raises(NotConnected):
            mcs_trees(Forest.from_edges(0, []), Forest.path(1))


class TestSupertree2:
    def test_p2_p3(self):
        res = supertree2(Forest.path(2), Forest.path(3))
        assert res.tree.n == 3

    def test_star_path(self):
        res = supertree2(Forest.star(3), Forest.path(4))
        assert res.tree.n == 5

    def test_identity(self):
        t = random_tree(8, 6)
        assert supertree2(t, t).tree.n == 6

    @given(st.integers(0, 10**6), st.integers(0, 10**6),
           st.integers(1, 12), st.integers(1, 12))
    @settings(max_examples=60, deadline=None)
    def test_inclusion_exclusion_identity(self, s1, s2, n1, n2):
        t1, t2 = random_tree(s1, n1), random_tree(s2, n2)
        res = supertree2(t1, t2)
        assert res.tree.n == t1.n + t2.n - mcs_trees(t1, t2).size
        assert res.tree.is_tree()
        assert check_embedding(t1, res.tree, res.embed1)
        assert check_embedding(t2, res.tree, res.embed2)

    def test_minimality_small(self):
        # every supertree order is n1+n2-mcs; cross-check against subsets
        rng = random.Random(21)
        for _ in range(10):
            t1 = random_tree(rng.randrange(10**6), rng.randint(1, 6))
            t2 = random_tree(rng.randrange(10**6), rng.randint(1, 6))
            res = supertree2(t1, t2)
            assert res.tree.n == t1.n + t2.n - brute_mcs_size(t1, t2)


class TestSupertree2Rooted:
    def test_single_vertices(self):
        a = root_at(Forest.from_edges(1, []), [0])
        res = supertree2_rooted(a, 0, a, 0)
        assert res.order == 1 and res.tree.n == 1

    def test_isomorphic(self):
        a = root_at(Forest.path(4), [0])
        res = supertree2_rooted(a, 1, a, 1)
        assert res.order == 3

    def test_path_below_vs_star_below(self):
        # anchored pair: P3 hanging below u, 2-leaf star below v
        a = root_at(Forest.path(3), [0])
        b = root_at(Forest.star(2), [0])
        res = supertree2_rooted(a, 0, b, 0)
        assert res.order == 4
        assert res.tree.is_tree()
        assert res.embed1.mapping[0] == res.root
        assert res.embed2.mapping[0] == res.root
        assert check_embedding(a.base, res.tree, res.embed1)
        assert check_embedding(b.base, res.tree, res.embed2)

    def test_rooted_order_formula(self):
        rng = random.Random(31)
        for _ in range(20):
            t1 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            t2 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            u, v = rng.randrange(t1.n), rng.randrange(t2.n)
            a, b = root_at(t1, [u]), root_at(t2, [v])
            res = supertree2_rooted(a, u, b, v)
            anchored = mcs_rooted_anchored(a, u, b, v).size
            assert res.order == a.subtree_size[u] + b.subtree_size[v] - anchored


class TestMcsEqualsContainment:
    def test_equality_iff_embeds(self):
        # mcs size == min order iff one tree embeds induced into the other
        from commonforest.embed import contains_induced

        rng = random.Random(77)
        for _ in range(25):
            t1 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            t2 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            small, big = (t1, t2) if t1.n <= t2.n else (t2, t1)
            embeds = contains_induced(small, big) is not None
            assert (mcs_trees(t1, t2).size == small.n) == embeds
