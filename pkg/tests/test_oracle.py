import random

import pytest

from commonforest.catalog import forests_of_order, trees_of_order
from commonforest.errors import BudgetExceeded
from commonforest.forest import Forest, random_forest, random_tree
from commonforest.generators import ThreePartitionInstance, gen_prop1
from commonforest.oracle import OracleBudget, oracle_max_subforest, oracle_min_superforest
from commonforest.pairwise import mcs_trees, supertree2
from commonforest.verify import check_common_subforest, check_embedding


def test_tree_counts():
    assert [len(trees_of_order(n)) for n in range(1, 11)] == [
        1, 1, 1, 2, 3, 6, 11, 23, 47, 106,
    ]


def test_forest_counts():
    assert [len(forests_of_order(n)) for n in range(0, 9)] == [
        1, 1, 2, 3, 6, 10, 20, 37, 76,
    ]


class TestMaxSubforest:
    def test_p4_star(self):
        res = oracle_max_subforest([Forest.path(4), Forest.star(3)])
        assert res.order == 3
        assert check_common_subforest(res.forest, [Forest.path(4), Forest.star(3)], res.embeddings)

    def test_identical(self):
        f = random_forest(3, 6, "random")
        res = oracle_max_subforest([f, f])
        assert res.order == 6

    def test_connected_mode_matches_mcs(self):
        rng = random.Random(12)
        for _ in range(12):
            t1 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            t2 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            res = oracle_max_subforest([t1, t2], connected=True)
            assert res.order == mcs_trees(t1, t2).size

    def test_prop1_yes_instance(self):
        pair = gen_prop1(ThreePartitionInstance(2, (2, 2, 3, 2, 2, 3)))
        res = oracle_max_subforest([pair.t1, pair.t2])
        assert res.order == pair.t1.n - 1 == 14

    def test_budget_subset_order(self):
        with pytest.raises(BudgetExceeded):
            oracle_max_subforest(
                [Forest.path(9), Forest.path(9)],
                budget=OracleBudget(max_subset_order=8),
            )


class TestMinSuperforest:
    def test_p3_star(self):
        res = oracle_min_superforest([Forest.path(3), Forest.star(3)])
        assert res.order == 4

    def test_p5_star(self):
        res = oracle_min_superforest([Forest.path(5), Forest.star(3)])
        assert res.order == 6

    def test_single_tree(self):
        t = random_tree(5, 7)
        res = oracle_min_superforest([t])
        assert res.order == 7

    def test_matches_eq2_duality(self):
        rng = random.Random(23)
        for _ in range(10):
            t1 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            t2 = random_tree(rng.randrange(10**6), rng.randint(1, 7))
            res = oracle_min_superforest([t1, t2])
            sub = oracle_max_subforest([t1, t2], connected=True)
            assert res.order == t1.n + t2.n - sub.order
            assert res.order == supertree2(t1, t2).tree.n
            for t, emb in zip([t1, t2], res.embeddings):
                assert check_embedding(t, res.forest, emb)

    def test_forest_mode_statement_one(self):
        rng = random.Random(31)
        for _ in range(8):
            t1 = random_tree(rng.randrange(10**6), rng.randint(2, 6))
            t2 = random_tree(rng.randrange(10**6), rng.randint(2, 6))
            result, all_min = oracle_min_superforest(
                [t1, t2], trees_only=False, find_all_min=True
            )
            assert result.forest.is_tree()
            assert all(w.is_tree() for w in all_min)

    def test_forest_inputs_allow_disconnected_answer(self):
        two_p2 = Forest.from_edges(4, [(0, 1), (2, 3)])
        res = oracle_min_superforest([two_p2])
        assert res.order == 4 and not res.forest.is_tree()

    def test_budget_host_order(self):
        with pytest.raises(BudgetExceeded):
            oracle_min_superforest(
                [Forest.path(5), Forest.star(4)],
                budget=OracleBudget(max_host_order=5),
            )
