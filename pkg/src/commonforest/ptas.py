"""Approximation scheme for maximum common induced subforest.

Per input forest, a bottom-up dynamic program computes the set of census
vectors (how many components isomorphic to each small catalog tree) over
all induced subforests whose components have order at most delta.  The
driver intersects these sets across inputs and maximizes total order over
the intersection; realizer back-pointers reconstruct one witness per
input.  The per-vertex states count everything *except* the in-progress
component containing the current vertex; the component's own census unit
is added only when it is complete.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .catalog import TreeCatalog, build_catalog
from .embed import contains_induced
from .errors import StateExplosion
from .forest import (
    Embedding,
    Forest,
    component_vertex_sets,
    tree_canonical,
)

Vector = tuple[int, ...]


class VectorSet:
    """Census vectors with enough provenance to rebuild one realizer each."""

    def __init__(
        self,
        q: int,
        entries: dict[Vector, object],
        realizer: Callable[[Vector, object], frozenset[int]],
    ) -> None:
        self.q = q
        self._entries = entries
        self._realizer = realizer

    @classmethod
    def zero(cls, q: int) -> "VectorSet":
        return cls(q, {(0,) * q: None}, lambda vec, prov: frozenset())

    def vectors(self) -> set[Vector]:
        return set(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, vec: Vector) -> bool:
        return vec in self._entries

    def realize(self, vec: Vector) -> frozenset[int]:
        """Vertex set of an induced subforest whose census equals `vec`."""
        return self._realizer(vec, self._entries[vec])


def vector_sum(a: VectorSet, b: VectorSet) -> VectorSet:
    """Minkowski sum with realizer composition (hosts must be disjoint)."""
    if a.q != b.q:
        raise ValueError("vector sets over different catalogs")
    entries: dict[Vector, object] = {}
    for va in sorted(a.vectors()):
        for vb in sorted(b.vectors()):
            vec = tuple(x + y for x, y in zip(va, vb))
            if vec not in entries:
                entries[vec] = (va, vb)
    return VectorSet(
        a.q,
        entries,
        lambda vec, prov: a.realize(prov[0]) | b.realize(prov[1]),
    )


class _Counter:
    __slots__ = ("stored", "limit")

    def __init__(self, limit: Optional[int]) -> None:
        self.stored = 0
        self.limit = limit

    def add(self, amount: int) -> None:
        self.stored += amount
        if self.limit is not None and self.stored > self.limit:
            raise StateExplosion(
                f"vector-set budget of {self.limit} states exceeded"
            )


class _ComponentDp:
    """States for one rooted component, in original host vertex ids."""

    def __init__(
        self,
        host: Forest,
        comp_vertices: list[int],
        catalog: TreeCatalog,
        counter: _Counter,
    ) -> None:
        self.host = host
        self.catalog = catalog
        q = catalog.q
        self.q = q
        self.zero: Vector = (0,) * q

        root = comp_vertices[0]
        parent: dict[int, int] = {root: -1}
        order = [root]
        for u in order:
            for w in host.adj[u]:
                if w not in parent:
                    parent[w] = u
                    order.append(w)
        self.root = root
        self.children = {
            u: [w for w in host.adj[u] if parent[w] == u] for u in order
        }

        self.empty: dict[int, dict[Vector, tuple]] = {}
        self.full: dict[int, dict[Vector, tuple]] = {}
        self.ex: dict[int, dict[int, dict[Vector, tuple]]] = {}

        for u in reversed(order):
            self._compute_vertex(u, counter)

    def _fold(
        self,
        parts: list[dict[Vector, tuple]],
    ) -> dict[Vector, tuple]:
        acc: dict[Vector, tuple] = {self.zero: ()}
        for part in parts:
            nxt: dict[Vector, tuple] = {}
            for va in sorted(acc):
                pa = acc[va]
                for vb in sorted(part):
                    vec = tuple(x + y for x, y in zip(va, vb))
                    if vec not in nxt:
                        nxt[vec] = pa + (vb,)
            acc = nxt
        return acc

    def _compute_vertex(self, u: int, counter: _Counter) -> None:
        kids = self.children[u]
        cat = self.catalog

        empty_u = self._fold([self.full[c] for c in kids])
        counter.add(len(empty_u))
        self.empty[u] = empty_u

        ex_u: dict[int, dict[Vector, tuple]] = {}
        for rc in cat.rooted:
            slots = rc.child_classes
            if len(slots) > len(kids):
                continue
            groups: list[tuple[int, int]] = []
            for cls in slots:
                if groups and groups[-1][0] == cls:
                    groups[-1] = (cls, groups[-1][1] + 1)
                else:
                    groups.append((cls, 1))
            # children able to host each distinct class
            viable = {
                cls: [
                    c
                    for c in kids
                    if self.ex.get(c, {}).get(cls)
                ]
                for cls, _ in groups
            }
            if any(len(viable[cls]) < cnt for cls, cnt in groups):
                continue
            target: dict[Vector, tuple] = {}

            def assign(
                gi: int, taken: frozenset[int], chosen: dict[int, int]
            ) -> None:
                if gi == len(groups):
                    parts = []
                    labels = []
                    for c in kids:
                        if c in chosen:
                            parts.append(self.ex[c][chosen[c]])
                            labels.append((c, chosen[c]))
                        else:
                            parts.append(self.empty[c])
                            labels.append((c, None))
                    folded = self._fold(parts)
                    for vec in sorted(folded):
                        if vec not in target:
                            target[vec] = (tuple(labels), folded[vec])
                    return
                cls, cnt = groups[gi]
                from itertools import combinations

                for subset in combinations(
                    [c for c in viable[cls] if c not in taken], cnt
                ):
                    nxt = dict(chosen)
                    for c in subset:
                        nxt[c] = cls
                    assign(gi + 1, taken | frozenset(subset), nxt)

            assign(0, frozenset(), {})
            if target:
                counter.add(len(target))
                ex_u[rc.index] = target
        self.ex[u] = ex_u

        full_u: dict[Vector, tuple] = {}
        for vec in sorted(empty_u):
            full_u[vec] = ("e", vec)
        for rc_index in sorted(ex_u):
            unit = cat.rooted[rc_index].tree_index
            for vec in sorted(ex_u[rc_index]):
                lifted = tuple(
                    x + (1 if i == unit else 0) for i, x in enumerate(vec)
                )
                if lifted not in full_u:
                    full_u[lifted] = ("c", rc_index, vec)
        counter.add(len(full_u))
        self.full[u] = full_u

    # realization ------------------------------------------------------

    def realize_root(self, vec: Vector) -> frozenset[int]:
        out: set[int] = set()
        stack: list[tuple[str, int, Optional[int], Vector]] = [
            ("full", self.root, None, vec)
        ]
        while stack:
            kind, u, rc, v = stack.pop()
            if kind == "full":
                prov = self.full[u][v]
                if prov[0] == "e":
                    stack.append(("empty", u, None, prov[1]))
                else:
                    stack.append(("ex", u, prov[1], prov[2]))
            elif kind == "empty":
                child_vecs = self.empty[u][v]
                for c, cv in zip(self.children[u], child_vecs):
                    stack.append(("full", c, None, cv))
            else:
                out.add(u)
                labels, child_vecs = self.ex[u][rc][v]
                for (c, cls), cv in zip(labels, child_vecs):
                    if cls is None:
                        stack.append(("empty", c, None, cv))
                    else:
                        stack.append(("ex", c, cls, cv))
        return frozenset(out)


def that_set(
    forest: Forest,
    catalog: TreeCatalog,
    max_states: Optional[int] = 1_000_000,
) -> VectorSet:
    """Census-vector set { t(F') : F' induced subforest of F } with
    realizers, computed per component and combined by Minkowski sum."""
    counter = _Counter(max_states)
    result = VectorSet.zero(catalog.q)
    for comp in component_vertex_sets(forest):
        dp = _ComponentDp(forest, comp, catalog, counter)
        comp_set = VectorSet(
            catalog.q,
            dict(dp.full[dp.root]),
            lambda vec, prov, dp=dp: dp.realize_root(vec),
        )
        result = vector_sum(result, comp_set)
        counter.add(len(result))
    return result


@dataclass
class StripResult:
    removed: tuple[int, ...]
    residual: Forest
    residual_map: dict[int, int]  # original id -> residual id


def strip_to_bounded(forest: Forest, delta: int) -> StripResult:
    """Iteratively delete a deepest vertex with at least delta proper
    descendants until every residual component has order at most delta."""
    if delta < 1:
        raise ValueError("delta must be positive")
    n = forest.n
    comps = component_vertex_sets(forest)
    parent = [-1] * n
    depth = [0] * n
    order: list[int] = []
    for vs in comps:
        root = vs[0]
        seen = {root}
        queue = [root]
        for u in queue:
            order.append(u)
            for w in forest.adj[u]:
                if w not in seen:
                    seen.add(w)
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
    alive = [True] * n
    removed: list[int] = []
    while True:
        count = [0] * n
        for u in reversed(order):
            p = parent[u]
            if alive[u] and p >= 0 and alive[p]:
                count[p] += count[u] + 1
        pick = -1
        for u in range(n):
            if alive[u] and count[u] >= delta:
                if pick < 0 or (depth[u], -u) > (depth[pick], -pick):
                    pick = u
        if pick < 0:
            break
        alive[pick] = False
        removed.append(pick)
    keep = [v for v in range(n) if alive[v]]
    residual = forest.induced(keep)
    return StripResult(
        tuple(removed), residual, {v: i for i, v in enumerate(keep)}
    )


@dataclass
class PtasResult:
    forest: Forest
    embeddings: list[Embedding]
    delta_used: int
    guarantee: Fraction
    best_vector: Vector
    requested_delta: int


def ptas_subforest(
    forests: Sequence[Forest],
    epsilon: Optional[float] = None,
    delta: Optional[int] = None,
    delta_cap: int = 6,
    max_states: Optional[int] = 1_000_000,
) -> PtasResult:
    """Common induced subforest of order >= (1 - 2/delta) * optimum.

    delta defaults to ceil(2/epsilon) and is capped at `delta_cap`; the
    guarantee actually achieved for the delta in effect is reported.
    Passing `delta` explicitly above the cap raises CapExceeded.
    """
    if not forests:
        raise ValueError("need at least one forest")
    if delta is None:
        if epsilon is None or epsilon <= 0:
            raise ValueError("epsilon must be positive when delta is not given")
        requested = math.ceil(2.0 / epsilon)
        delta_used = min(requested, delta_cap)
    else:
        requested = delta
        delta_used = delta
    catalog = build_catalog(delta_used, cap=delta_cap)
    vsets = [that_set(f, catalog, max_states) for f in forests]
    common = set.intersection(*(v.vectors() for v in vsets))
    orders = catalog.orders
    best = max(common, key=lambda t: (sum(x * o for x, o in zip(t, orders)), t))

    witness = _vector_forest(best, catalog)
    embeddings = [
        _match_realizer(witness, best, catalog, f, v.realize(best))
        for f, v in zip(forests, vsets)
    ]
    return PtasResult(
        forest=witness,
        embeddings=embeddings,
        delta_used=delta_used,
        guarantee=Fraction(delta_used - 2, delta_used),
        best_vector=best,
        requested_delta=requested,
    )


def _vector_forest(vec: Vector, catalog: TreeCatalog) -> Forest:
    """The abstract forest with vec[i] copies of the i-th catalog tree."""
    edges: list[tuple[int, int]] = []
    base = 0
    for i, count in enumerate(vec):
        t = catalog.trees[i]
        for _ in range(count):
            edges.extend((base + a, base + b) for a, b in t.edges())
            base += t.n
    return Forest.from_edges(base, edges)


def _match_realizer(
    witness: Forest,
    vec: Vector,
    catalog: TreeCatalog,
    host: Forest,
    realized: frozenset[int],
) -> Embedding:
    """Embed the abstract witness onto the realized vertex set in `host`."""
    verts = sorted(realized)
    sub = host.induced(verts)
    groups: dict[int, list[list[int]]] = {}
    for comp in component_vertex_sets(sub):
        cls = catalog.tree_index(tree_canonical(sub.induced(comp)).code)
        groups.setdefault(cls, []).append([verts[v] for v in comp])
    mapping: dict[int, int] = {}
    base = 0
    for i, count in enumerate(vec):
        pool = sorted(groups.get(i, []), key=lambda c: c[0])
        assert len(pool) == count, "realizer census mismatch"
        t = catalog.trees[i]
        for copy in range(count):
            comp_orig = pool[copy]
            comp_local = host.induced(comp_orig)
            iso = contains_induced(t, comp_local)
            assert iso is not None
            for a, b in iso.mapping.items():
                mapping[base + a] = comp_orig[b]
            base += t.n
    return Embedding(mapping)
