import pytest

from commonforest.embed import contains_induced
from commonforest.errors import BudgetExceeded
from commonforest.forest import Forest, random_forest
from commonforest.verify import check_embedding


def union_of_paths(orders):
    edges = []
    base = 0
    for p in orders:
        edges.extend((base + i, base + i + 1) for i in range(p - 1))
        base += p
    return Forest.from_edges(sum(orders), edges)


def test_p3_in_star():
    emb = contains_induced(Forest.path(3), Forest.star(3))
    assert emb is not None
    assert check_embedding(Forest.path(3), Forest.star(3), emb)


def test_p4_not_in_star():
    assert contains_induced(Forest.path(4), Forest.star(3)) is None


def test_three_partition_yes_instance():
    pattern = union_of_paths([2, 2, 3, 2, 2, 3])
    host = union_of_paths([9, 9])
    emb = contains_induced(pattern, host)
    assert emb is not None
    assert check_embedding(pattern, host, emb)


def test_three_partition_no_instance():
    # 2+2+2 cannot tile two P7 hosts gap-free with four P2 and two P3? here:
    # total 14 into hosts of total 14 minus required gaps -> impossible
    pattern = union_of_paths([2, 2, 3, 2, 2, 3])
    host = union_of_paths([8, 8])
    assert contains_induced(pattern, host) is None


def test_identity_embedding():
    f = random_forest(5, 9, "random")
    emb = contains_induced(f, f)
    assert emb is not None and emb.mapping == {v: v for v in range(f.n)}


def test_empty_pattern():
    assert contains_induced(Forest.from_edges(0, []), Forest.path(3)) is not None


def test_pattern_larger_than_host():
    assert contains_induced(Forest.path(5), Forest.path(4)) is None


def test_tree_into_forest_host():
    host = union_of_paths([2, 5])
    emb = contains_induced(Forest.path(4), host)
    assert emb is not None
    assert check_embedding(Forest.path(4), host, emb)


def test_forest_into_tree_host():
    pattern = Forest.from_edges(3, [(0, 1)])  # P2 + isolated vertex
    emb = contains_induced(pattern, Forest.path(5))
    assert emb is not None
    assert check_embedding(pattern, Forest.path(5), emb)


def test_non_adjacency_between_components():
    # two P2 components need a host with two independent edges
    pattern = union_of_paths([2, 2])
    assert contains_induced(pattern, Forest.path(4)) is None
    emb = contains_induced(pattern, Forest.path(5))
    assert emb is not None
    assert check_embedding(pattern, Forest.path(5), emb)


def test_budget_exhaustion():
    pattern = union_of_paths([2, 2, 3, 2, 2, 3])
    host = union_of_paths([9, 9])
    with pytest.raises(BudgetExceeded):
        contains_induced(pattern, host, node_budget=3)


def test_star_degree_requirement():
    assert contains_induced(Forest.star(4), Forest.star(3)) is None
    emb = contains_induced(Forest.star(3), Forest.star(7))
    assert emb is not None
    assert check_embedding(Forest.star(3), Forest.star(7), emb)
