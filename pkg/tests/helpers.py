"""Brute-force reference implementations used as test oracles.

Everything here is independent of the library's solver paths: subsets are
enumerated, permutations tried, candidates checked by first principles.
"""

from __future__ import annotations

from itertools import combinations, permutations

from commonforest.forest import Forest, component_vertex_sets


def brute_isomorphic(a: Forest, b: Forest) -> bool:
    if a.n != b.n or a.edge_count() != b.edge_count():
        return False
    ea = {frozenset(e) for e in a.edges()}
    for perm in permutations(range(b.n)):
        eb = {frozenset((perm[u], perm[v])) for u, v in b.edges()}
        if ea == eb:
            return True
    return False


def induced_on(forest: Forest, verts: tuple[int, ...]) -> Forest:
    return forest.induced(list(verts))


def connected_subsets(forest: Forest) -> list[tuple[int, ...]]:
    """All vertex subsets inducing a connected nonempty subgraph."""
    out = []
    for size in range(1, forest.n + 1):
        for vs in combinations(range(forest.n), size):
            sub = forest.induced(list(vs))
            if len(component_vertex_sets(sub)) == 1:
                out.append(vs)
    return out


def random_tree_maxdeg(seed: int, order: int, maxdeg: int) -> Forest:
    """Random tree with a degree cap (parent chosen among non-saturated)."""
    import random as _random

    rng = _random.Random(seed)
    deg = [0] * order
    edges = []
    for v in range(1, order):
        choices = [u for u in range(v) if deg[u] < maxdeg]
        p = rng.choice(choices)
        edges.append((p, v))
        deg[p] += 1
        deg[v] += 1
    return Forest.from_edges(order, edges)


def brute_max_matching(w: list[list[int]]) -> int:
    """Exhaustive maximum-weight matching value."""
    rows, cols = len(w), len(w[0]) if w else 0

    def rec(i: int, used: int) -> int:
        if i == rows:
            return 0
        best = rec(i + 1, used)
        for j in range(cols):
            if not used & (1 << j):
                best = max(best, w[i][j] + rec(i + 1, used | (1 << j)))
        return best

    return rec(0, 0)


def brute_common_rooted_anchored(
    a: Forest, ra: int, b: Forest, rb: int
) -> int:
    """Max order of a common induced subtree of two rooted trees with the
    roots corresponded, by exhaustive subset enumeration."""
    from commonforest.forest import root_at, rooted_canonical

    def anchored_codes(t: Forest, r: int) -> dict[bytes, int]:
        codes: dict[bytes, int] = {}
        for size in range(1, t.n + 1):
            for vs in combinations(range(t.n), size):
                if r not in vs:
                    continue
                sub = t.induced(list(vs))
                if len(component_vertex_sets(sub)) != 1:
                    continue
                local_r = list(vs).index(r)
                code = rooted_canonical(root_at(sub, [local_r]), local_r).code
                codes[code] = max(codes.get(code, 0), size)
        return codes

    ca = anchored_codes(a, ra)
    cb = anchored_codes(b, rb)
    common = set(ca) & set(cb)
    return max((ca[c] for c in common), default=0)
