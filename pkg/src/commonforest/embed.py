"""Induced-subforest containment tests.

Tree pattern into tree host goes through the polynomial common-subtree DP;
everything else is component-placement backtracking with canonical-form
symmetry breaking and an optional node-expansion budget.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .errors import BudgetExceeded
from .forest import (
    Embedding,
    Forest,
    component_vertex_sets,
    tree_canonical,
)
from .pairwise import build_engine


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: Optional[int]) -> None:
        self.left = limit

    def tick(self, amount: int = 1) -> None:
        if self.left is not None:
            self.left -= amount
            if self.left < 0:
                raise BudgetExceeded("node-expansion budget exhausted")


def _identity_ok(pattern: Forest, host: Forest) -> bool:
    pn = pattern.n
    for u in range(pn):
        if set(pattern.adj[u]) != {v for v in host.adj[u] if v < pn}:
            return False
    return True


def _tree_in_tree(pattern: Forest, host: Forest) -> Optional[dict[int, int]]:
    """Induced embedding of a tree into a tree via the MCS value."""
    if pattern.n > host.n:
        return None
    eng = build_engine(pattern, host)
    u, v, size = eng.best_roots()
    if size < pattern.n:
        return None
    pairs = eng.extract((u, None), (v, None))
    return {a: b for a, b, _ in pairs}


def _placements(
    comp: Forest,
    host: Forest,
    allowed: frozenset[int],
    min_image: int,
    budget: _Budget,
) -> Iterator[dict[int, int]]:
    """All induced embeddings of a connected pattern into the allowed region.

    In a forest host, an injective edge-preserving map of a connected tree
    is automatically induced, so only adjacency is enforced here.  Yields
    only embeddings whose smallest image vertex exceeds `min_image`
    (symmetry breaking across isomorphic pattern components).
    """
    order: list[int] = [0]
    parent = {0: -1}
    for u in order:
        for v in comp.adj[u]:
            if v not in parent:
                parent[v] = u
                order.append(v)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(idx: int) -> Iterator[dict[int, int]]:
        if idx == comp.n:
            if min(used) > min_image:
                yield dict(mapping)
            return
        v = order[idx]
        p = parent[v]
        candidates = [h for h in host.adj[mapping[p]] if h in allowed and h not in used]
        need = len(comp.adj[v])
        for h in sorted(candidates):
            budget.tick()
            if len(host.adj[h]) < need:
                continue
            mapping[v] = h
            used.add(h)
            yield from extend(idx + 1)
            used.remove(h)
            del mapping[v]

    need0 = len(comp.adj[0])
    for start in sorted(allowed):
        budget.tick()
        if len(host.adj[start]) < need0:
            continue
        mapping[0] = start
        used.add(start)
        yield from extend(1)
        used.remove(start)
        del mapping[0]


def contains_induced(
    pattern: Forest, host: Forest, node_budget: "Optional[int | _Budget]" = None
) -> Optional[Embedding]:
    """Embedding witnessing pattern as an induced subforest of host, or None.

    `node_budget` may be a fresh limit or a shared _Budget ticker.  Raises
    BudgetExceeded when the expansion budget runs out; that outcome means
    "unknown", never a wrong answer.
    """
    if pattern.n == 0:
        return Embedding({})
    if pattern.n > host.n:
        return None
    if pattern.n <= host.n and _identity_ok(pattern, host):
        return Embedding({v: v for v in range(pattern.n)})

    comp_sets = component_vertex_sets(pattern)
    comps = [pattern.induced(vs) for vs in comp_sets]
    host_comp_sets = component_vertex_sets(host)

    if len(comps) == 1 and len(host_comp_sets) == 1:
        found = _tree_in_tree(pattern, host)
        return Embedding(found) if found is not None else None
    if len(comps) == 1:
        for hvs in host_comp_sets:
            sub = host.induced(hvs)
            found = _tree_in_tree(comps[0], sub)
            if found is not None:
                return Embedding(
                    {comp_sets[0][c]: hvs[h] for c, h in found.items()}
                )
        return None

    # order components large-to-small, canonical code as tie-break
    codes = [tree_canonical(c).code for c in comps]
    idx_order = sorted(range(len(comps)), key=lambda i: (-comps[i].n, codes[i], i))
    budget = node_budget if isinstance(node_budget, _Budget) else _Budget(node_budget)
    result: dict[int, int] = {}
    all_hosts = frozenset(range(host.n))

    def place(pos: int, allowed: frozenset[int]) -> bool:
        if pos == len(idx_order):
            return True
        i = idx_order[pos]
        prev = idx_order[pos - 1] if pos > 0 else None
        same_as_prev = prev is not None and codes[i] == codes[prev] and comps[i].n == comps[prev].n
        floor = min(
            (result[v] for v in comp_sets[prev]), default=-1
        ) if same_as_prev else -1
        for emb in _placements(comps[i], host, allowed, floor, budget):
            image = set(emb.values())
            for local, h in emb.items():
                result[comp_sets[i][local]] = h
            blocked = set(image)
            for h in image:
                blocked.update(host.adj[h])
            if place(pos + 1, allowed - frozenset(blocked)):
                return True
            for local in emb:
                del result[comp_sets[i][local]]
        return False

    if place(0, all_hosts):
        return Embedding(dict(result))
    return None
