"""Maximum common induced subtree and minimum supertree of two trees.

The anchored dynamic program works on *shapes*: canonical ids interned for
every rooted subtree reachable over a directed edge (and for every whole-tree
rooting).  Repeated subtrees, which dominate the benchmark caterpillar
families, collapse to a single DP state with a multiplicity, and the child
matching becomes a small capacitated transportation problem.  Values are
exact integers throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotConnected
from .forest import Embedding, Forest, RootedForest
from .matching import max_weight_transport

Anchor = tuple[int, Optional[int]]  # (vertex, excluded neighbor or None)


class ShapeContext:
    """Interns rooted-subtree shapes shared across several forests."""

    def __init__(self) -> None:
        self._ids: dict[tuple[int, ...], int] = {}
        self.child_types: list[tuple[tuple[int, int], ...]] = []
        self.size: list[int] = []

    def intern(self, child_ids: Sequence[int]) -> int:
        key = tuple(sorted(child_ids))
        sid = self._ids.get(key)
        if sid is not None:
            return sid
        sid = len(self.size)
        self._ids[key] = sid
        types: list[tuple[int, int]] = []
        for c in key:
            if types and types[-1][0] == c:
                types[-1] = (c, types[-1][1] + 1)
            else:
                types.append((c, 1))
        self.child_types.append(tuple(types))
        self.size.append(1 + sum(self.size[c] * k for c, k in types))
        return sid


class ShapeTable:
    """Per-forest shape ids for all directed-edge subtrees and all rootings."""

    def __init__(self, forest: Forest, ctx: ShapeContext) -> None:
        self.forest = forest
        self.ctx = ctx
        n = forest.n
        adj = forest.adj
        self.du: dict[tuple[int, int], int] = {}  # (v, excluded) -> sid
        self.root_sid: list[int] = [0] * n

        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            # BFS orientation from the component's least vertex
            parent: dict[int, int] = {start: -1}
            order = [start]
            seen[start] = True
            for u in order:
                for v in adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        parent[v] = u
                        order.append(v)
            # pass 1: downward shapes, leaves first
            for u in reversed(order):
                p = parent[u]
                if p >= 0:
                    self.du[(u, p)] = ctx.intern(
                        [self.du[(w, u)] for w in adj[u] if w != p]
                    )
            # pass 2: upward shapes in BFS order
            for u in order:
                p = parent[u]
                if p >= 0:
                    self.du[(p, u)] = ctx.intern(
                        [self.du[(w, p)] for w in adj[p] if w != u]
                    )
        for u in range(n):
            self.root_sid[u] = ctx.intern([self.du[(w, u)] for w in adj[u]])

        sids = set(self.du.values())
        sids.update(self.root_sid)
        self.all_sids = sorted(sids, key=lambda s: (ctx.size[s], s))

    def anchor_sid(self, anchor: Anchor) -> int:
        v, excluded = anchor
        if excluded is None:
            return self.root_sid[v]
        return self.du[(v, excluded)]

    def anchor_children(self, anchor: Anchor) -> list[tuple[int, int]]:
        """Concrete children (vertex, sid) of an anchored subtree's root."""
        v, excluded = anchor
        return [
            (w, self.du[(w, v)]) for w in self.forest.adj[v] if w != excluded
        ]

    def anchor_vertices(self, anchor: Anchor) -> list[int]:
        """All vertices of the anchored subtree, root first."""
        v, excluded = anchor
        out = [v]
        stack = [(v, excluded)]
        while stack:
            x, ex = stack.pop()
            for w in self.forest.adj[x]:
                if w != ex:
                    out.append(w)
                    stack.append((w, x))
        return out

    def distinct_root_reps(self) -> list[tuple[int, int]]:
        """(sid, representative vertex) for each distinct whole-tree rooting."""
        reps: dict[int, int] = {}
        for u in range(self.forest.n):
            reps.setdefault(self.root_sid[u], u)
        return sorted((s, v) for s, v in reps.items())


def _typed_groups(children: list[tuple[int, int]]) -> tuple[list[int], list[list[int]]]:
    groups: dict[int, list[int]] = {}
    for v, s in children:
        groups.setdefault(s, []).append(v)
    sids = sorted(groups)
    return sids, [sorted(groups[s]) for s in sids]


class PairEngine:
    """Anchored common-subtree values between two forests, keyed by shape."""

    def __init__(self, ta: ShapeTable, tb: ShapeTable) -> None:
        if ta.ctx is not tb.ctx:
            raise ValueError("shape tables must share a context")
        self.ta = ta
        self.tb = tb
        self.ctx = ta.ctx
        self.memo: dict[tuple[int, int], int] = {}
        self._fill()

    def _fill(self) -> None:
        ctx = self.ctx
        memo = self.memo
        kinds_a = [(s, ctx.child_types[s]) for s in self.ta.all_sids]
        kinds_b = [(s, ctx.child_types[s]) for s in self.tb.all_sids]
        for sa, ca in kinds_a:
            for sb, cb in kinds_b:
                if (sa, sb) in memo:
                    continue
                if not ca or not cb:
                    memo[(sa, sb)] = 1
                elif len(ca) == 1 and len(cb) == 1:
                    (c1, k1), (c2, k2) = ca[0], cb[0]
                    memo[(sa, sb)] = 1 + min(k1, k2) * memo[(c1, c2)]
                elif len(ca) == 1:
                    c1, k1 = ca[0]
                    vals = sorted(
                        ((memo[(c1, c2)], k2) for c2, k2 in cb), reverse=True
                    )
                    left, acc = k1, 0
                    for v, k2 in vals:
                        take = min(left, k2)
                        acc += take * v
                        left -= take
                        if not left:
                            break
                    memo[(sa, sb)] = 1 + acc
                elif len(cb) == 1:
                    c2, k2 = cb[0]
                    vals = sorted(
                        ((memo[(c1, c2)], k1) for c1, k1 in ca), reverse=True
                    )
                    left, acc = k2, 0
                    for v, k1 in vals:
                        take = min(left, k1)
                        acc += take * v
                        left -= take
                        if not left:
                            break
                    memo[(sa, sb)] = 1 + acc
                else:
                    w = [[memo[(c1, c2)] for c2, _ in cb] for c1, _ in ca]
                    total, _ = max_weight_transport(
                        [k for _, k in ca], [k for _, k in cb], w
                    )
                    memo[(sa, sb)] = 1 + total

    def value(self, sa: int, sb: int) -> int:
        return self.memo[(sa, sb)]

    def anchored_value(self, anchor_a: Anchor, anchor_b: Anchor) -> int:
        return self.memo[(self.ta.anchor_sid(anchor_a), self.tb.anchor_sid(anchor_b))]

    def best_roots(self) -> tuple[int, int, int]:
        """(vertex in A, vertex in B, size) maximizing the anchored value."""
        best = (-1, -1, 0)
        for sa, u in self.ta.distinct_root_reps():
            for sb, v in self.tb.distinct_root_reps():
                val = self.memo[(sa, sb)]
                if val > best[2]:
                    best = (u, v, val)
        return best

    def extract(self, anchor_a: Anchor, anchor_b: Anchor) -> list[tuple[int, int, int]]:
        """Realize an optimal anchored common subtree.

        Returns (vertex in A, vertex in B, parent pair index) triples;
        entry 0 is the root pair with parent index -1.
        """
        memo = self.memo
        out: list[tuple[int, int, int]] = []
        stack: list[tuple[Anchor, Anchor, int]] = [(anchor_a, anchor_b, -1)]
        while stack:
            aa, ab, par = stack.pop()
            idx = len(out)
            out.append((aa[0], ab[0], par))
            ca = self.ta.anchor_children(aa)
            cb = self.tb.anchor_children(ab)
            if not ca or not cb:
                continue
            sids_a, groups_a = _typed_groups(ca)
            sids_b, groups_b = _typed_groups(cb)
            w = [[memo[(s1, s2)] for s2 in sids_b] for s1 in sids_a]
            _, flow = max_weight_transport(
                [len(g) for g in groups_a], [len(g) for g in groups_b], w
            )
            pos_a = [0] * len(groups_a)
            pos_b = [0] * len(groups_b)
            for (i, j) in sorted(flow):
                for _ in range(flow[(i, j)]):
                    va = groups_a[i][pos_a[i]]
                    vb = groups_b[j][pos_b[j]]
                    pos_a[i] += 1
                    pos_b[j] += 1
                    stack.append(((va, aa[0]), (vb, ab[0]), idx))
        return out


@dataclass
class McsResult:
    """A maximum common induced subtree with embeddings into both inputs."""

    size: int
    tree: Forest
    embed1: Embedding
    embed2: Embedding


@dataclass
class SupertreeResult:
    """A minimum supertree with embeddings of both inputs into it."""

    tree: Forest
    embed1: Embedding
    embed2: Embedding


@dataclass
class RootedSupertreeResult:
    order: int
    tree: Forest
    root: int
    embed1: Embedding
    embed2: Embedding


def _pairs_to_mcs(pairs: list[tuple[int, int, int]]) -> McsResult:
    edges = [(p, i) for i, (_, _, p) in enumerate(pairs) if p >= 0]
    tree = Forest.from_edges(len(pairs), edges)
    return McsResult(
        size=len(pairs),
        tree=tree,
        embed1=Embedding({i: a for i, (a, _, _) in enumerate(pairs)}),
        embed2=Embedding({i: b for i, (_, b, _) in enumerate(pairs)}),
    )


def _require_tree(t: Forest, name: str) -> None:
    if not t.is_tree():
        raise NotConnected(f"{name} must be a nonempty tree")


def build_engine(t1: Forest, t2: Forest) -> PairEngine:
    ctx = ShapeContext()
    return PairEngine(ShapeTable(t1, ctx), ShapeTable(t2, ctx))


def mcs_trees(t1: Forest, t2: Forest) -> McsResult:
    """Maximum-order connected common induced subtree of two trees."""
    _require_tree(t1, "t1")
    _require_tree(t2, "t2")
    eng = build_engine(t1, t2)
    u, v, _ = eng.best_roots()
    return _pairs_to_mcs(eng.extract((u, None), (v, None)))


def mcs_rooted_anchored(
    a: RootedForest, u: int, b: RootedForest, v: int
) -> McsResult:
    """Maximum common rooted subtree of the down-subtrees at u and v,
    with the two roots forced to correspond."""
    eng = build_engine(a.base, b.base)
    return _pairs_to_mcs(
        eng.extract((u, a.parent[u]), (v, b.parent[v]))
    )


def _glue_union(
    base_a: Forest,
    verts_a: list[int],
    base_b: Forest,
    verts_b: list[int],
    pairs: list[tuple[int, int, int]],
) -> tuple[Forest, Embedding, Embedding]:
    """Extend the A side by the B vertices outside the common subtree.

    `pairs` are (a-vertex, b-vertex) correspondences of the common subtree.
    Result order is |A| + |B| - |pairs|; both embeddings are induced by
    construction (validated by the acyclicity check in from_edges).
    """
    local_a = {v: i for i, v in enumerate(verts_a)}
    b_to_new: dict[int, int] = {}
    for a_v, b_v, _ in pairs:
        b_to_new[b_v] = local_a[a_v]
    nxt = len(verts_a)
    for v in verts_b:
        if v not in b_to_new:
            b_to_new[v] = nxt
            nxt += 1
    in_a = set(verts_a)
    in_b = set(verts_b)
    old_b = {b for _, b, _ in pairs}
    edges = [
        (local_a[u], local_a[v])
        for u in verts_a
        for v in base_a.adj[u]
        if u < v and v in in_a
    ]
    for u in verts_b:
        for v in base_b.adj[u]:
            if u < v and v in in_b and (u not in old_b or v not in old_b):
                edges.append((b_to_new[u], b_to_new[v]))
    tree = Forest.from_edges(nxt, edges)
    embed_a = Embedding({v: local_a[v] for v in verts_a})
    embed_b = Embedding({v: b_to_new[v] for v in verts_b})
    return tree, embed_a, embed_b


def supertree2(t1: Forest, t2: Forest) -> SupertreeResult:
    """Minimum supertree of two trees via inclusion-exclusion on the MCS."""
    _require_tree(t1, "t1")
    _require_tree(t2, "t2")
    eng = build_engine(t1, t2)
    u, v, _ = eng.best_roots()
    pairs = eng.extract((u, None), (v, None))
    tree, e1, e2 = _glue_union(
        t1, list(range(t1.n)), t2, list(range(t2.n)), pairs
    )
    return SupertreeResult(tree, e1, e2)


def supertree2_rooted(
    a: RootedForest, u: int, b: RootedForest, v: int
) -> RootedSupertreeResult:
    """Minimum rooted supertree of the down-subtrees at u and v whose root
    realizes both anchors."""
    eng = build_engine(a.base, b.base)
    anchor_a: Anchor = (u, a.parent[u])
    anchor_b: Anchor = (v, b.parent[v])
    pairs = eng.extract(anchor_a, anchor_b)
    verts_a = sorted(eng.ta.anchor_vertices(anchor_a))
    verts_b = sorted(eng.tb.anchor_vertices(anchor_b))
    tree, e1, e2 = _glue_union(a.base, verts_a, b.base, verts_b, pairs)
    return RootedSupertreeResult(tree.n, tree, e1.mapping[u], e1, e2)
