"""Exact minimum supertree of three bounded-degree trees.

Two candidate families cover every minimum supertree: ones containing two
of the inputs disjointly, joined by a path (enumerated explicitly), and
ones where all three copies share a vertex (solved by a rooted partition
DP over anchor triples).  Anchor states are keyed by subtree shape, so
repeated subtrees collapse and the outer loop over root triples reuses
all deeper values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .errors import NotConnected, SizeLimit
from .forest import Embedding, Forest
from .greedy import greedy_supertree
from .pairwise import (
    Anchor,
    PairEngine,
    ShapeContext,
    ShapeTable,
    SupertreeResult,
    _glue_union,
    supertree2,
)

DEFAULT_PARTITION_CAP = 12


def enumerate_partitions(
    u1: Sequence, u2: Sequence, u3: Sequence, cap: int = DEFAULT_PARTITION_CAP
) -> Iterator[list[frozenset]]:
    """All partitions of U1 u U2 u U3 into parts holding at most one
    element of each set, each partition exactly once."""
    sets = [list(u1), list(u2), list(u3)]
    elements: list[tuple[int, object]] = []
    seen: set = set()
    for origin, items in enumerate(sets):
        for e in items:
            if e in seen:
                raise ValueError("input sets must be disjoint")
            seen.add(e)
            elements.append((origin, e))
    if len(elements) > cap:
        raise SizeLimit(
            f"ground set of {len(elements)} elements exceeds cap {cap}"
        )

    parts: list[list[tuple[int, object]]] = []

    def rec(idx: int) -> Iterator[list[frozenset]]:
        if idx == len(elements):
            yield [frozenset(e for _, e in part) for part in parts]
            return
        origin, e = elements[idx]
        for part in parts:
            if all(o != origin for o, _ in part):
                part.append((origin, e))
                yield from rec(idx + 1)
                part.pop()
        parts.append([(origin, e)])
        yield from rec(idx + 1)
        parts.pop()

    return rec(0)


# part of a partition plan: one child shape per tree role, or None
Part = tuple[Optional[int], Optional[int], Optional[int]]


@dataclass
class Exact3Stats:
    dp_states: int = 0
    partitions: int = 0


class _Engine3:
    """Shared shape tables, pair engines, and the f(.) memo for one triple."""

    def __init__(self, trees: Sequence[Forest], cap: int) -> None:
        self.trees = list(trees)
        self.cap = cap
        self.ctx = ShapeContext()
        self.tables = [ShapeTable(t, self.ctx) for t in trees]
        self.pair = {
            (0, 1): PairEngine(self.tables[0], self.tables[1]),
            (0, 2): PairEngine(self.tables[0], self.tables[2]),
            (1, 2): PairEngine(self.tables[1], self.tables[2]),
        }
        self.f3_memo: dict[tuple[int, int, int], int] = {}
        self.stats = Exact3Stats()

    def single_cost(self, shape: int) -> int:
        return self.ctx.size[shape]

    def pair_cost(self, ri: int, si: int, rj: int, sj: int) -> int:
        if ri > rj:
            ri, si, rj, sj = rj, sj, ri, si
        return (
            self.ctx.size[si]
            + self.ctx.size[sj]
            - self.pair[(ri, rj)].value(si, sj)
        )

    def _expand_children(self, shape: int) -> list[int]:
        return [c for c, k in self.ctx.child_types[shape] for _ in range(k)]

    def f3(self, s1: int, s2: int, s3: int) -> int:
        """Minimum order of a rooted supertree realizing all three anchors."""
        key = (s1, s2, s3)
        cached = self.f3_memo.get(key)
        if cached is not None:
            return cached
        kinds = self.ctx.child_types
        live = [(r, s) for r, s in enumerate(key) if kinds[s]]
        if not live:
            val = 1
        elif len(live) == 1:
            val = self.ctx.size[live[0][1]]
        elif len(live) == 2:
            (ra, sa), (rb, sb) = live
            val = self.pair_cost(ra, sa, rb, sb)
        else:
            val = 1 + self._partition_min(
                self._expand_children(s1),
                self._expand_children(s2),
                self._expand_children(s3),
            )[0]
        self.f3_memo[key] = val
        self.stats.dp_states = len(self.f3_memo)
        return val

    def _partition_min(
        self,
        ca: list[int],
        cb: list[int],
        cc: list[int],
        want_plan: bool = False,
    ) -> tuple[int, list[Part]]:
        """Cheapest admissible partition of the three child-shape lists.

        Sequential DP: every A child picks its partners (none, B, C, or
        both), then every uncovered B child picks a C partner or goes
        alone, then leftovers of C go alone.
        """
        if len(ca) + len(cb) + len(cc) > self.cap:
            raise SizeLimit(
                f"ground set of {len(ca) + len(cb) + len(cc)} children "
                f"exceeds cap {self.cap}"
            )
        nb, nc = len(cb), len(cc)
        single = self.single_cost

        # phase A ---------------------------------------------------------
        start: dict[tuple[int, int], tuple[int, tuple]] = {(0, 0): (0, ())}
        layer = start
        for a in ca:
            nxt: dict[tuple[int, int], tuple[int, tuple]] = {}

            def consider(state, cost, part) -> None:
                old = nxt.get(state)
                entry = (cost, (part,))
                if old is None or cost < old[0]:
                    nxt[state] = (
                        cost,
                        layer_entry[1] + (part,) if want_plan else (),
                    )

            for (mb, mc), layer_entry in layer.items():
                base = layer_entry[0]
                self.stats.partitions += 1
                consider((mb, mc), base + single(a), (a, None, None))
                for j in range(nb):
                    if not mb >> j & 1:
                        consider(
                            (mb | 1 << j, mc),
                            base + self.pair_cost(0, a, 1, cb[j]),
                            (a, cb[j], None),
                        )
                for t in range(nc):
                    if not mc >> t & 1:
                        consider(
                            (mb, mc | 1 << t),
                            base + self.pair_cost(0, a, 2, cc[t]),
                            (a, None, cc[t]),
                        )
                for j in range(nb):
                    if mb >> j & 1:
                        continue
                    for t in range(nc):
                        if not mc >> t & 1:
                            consider(
                                (mb | 1 << j, mc | 1 << t),
                                base + self.f3(a, cb[j], cc[t]),
                                (a, cb[j], cc[t]),
                            )
            layer = nxt

        # phases B and C ----------------------------------------------------
        bc_memo: dict[tuple[int, int, int], tuple[int, tuple]] = {}

        def tail(idx: int, mb: int, mc: int) -> tuple[int, tuple]:
            if idx == nb:
                cost = 0
                parts: tuple = ()
                for t in range(nc):
                    if not mc >> t & 1:
                        cost += single(cc[t])
                        if want_plan:
                            parts += ((None, None, cc[t]),)
                return cost, parts
            key = (idx, mb, mc)
            hit = bc_memo.get(key)
            if hit is not None:
                return hit
            if mb >> idx & 1:
                res = tail(idx + 1, mb, mc)
            else:
                self.stats.partitions += 1
                b = cb[idx]
                best_cost, best_parts = tail(idx + 1, mb, mc)
                best_cost += single(b)
                if want_plan:
                    best_parts = ((None, b, None),) + best_parts
                for t in range(nc):
                    if mc >> t & 1:
                        continue
                    sub_cost, sub_parts = tail(idx + 1, mb, mc | 1 << t)
                    cost = sub_cost + self.pair_cost(1, b, 2, cc[t])
                    if cost < best_cost:
                        best_cost = cost
                        best_parts = (
                            ((None, b, cc[t]),) + sub_parts if want_plan else ()
                        )
                res = (best_cost, best_parts)
            bc_memo[key] = res
            return res

        best_total: Optional[int] = None
        best_plan: tuple = ()
        for (mb, mc), (cost, parts) in sorted(layer.items()):
            t_cost, t_parts = tail(0, mb, mc)
            if best_total is None or cost + t_cost < best_total:
                best_total = cost + t_cost
                best_plan = parts + t_parts
        assert best_total is not None
        return best_total, list(best_plan)

    # witness construction -------------------------------------------------

    def anchors_shapes(self, anchors: list[tuple[int, Anchor]]) -> list[int]:
        return [self.tables[r].anchor_sid(a) for r, a in anchors]

    def f_anchors(self, anchors: list[tuple[int, Anchor]]) -> int:
        shapes = {r: self.tables[r].anchor_sid(a) for r, a in anchors}
        live = [(r, s) for r, s in sorted(shapes.items()) if self.ctx.child_types[s]]
        if len(anchors) == 3:
            return self.f3(shapes[0], shapes[1], shapes[2])
        if not live:
            return 1
        if len(live) == 1:
            return self.ctx.size[live[0][1]]
        (ra, sa), (rb, sb) = live
        return self.pair_cost(ra, sa, rb, sb)

    def build_witness(
        self, anchors: list[tuple[int, Anchor]]
    ) -> tuple[Forest, int, dict[int, dict[int, int]]]:
        """Materialize an optimal rooted supertree for the anchor set.

        Returns (tree, root, per-role vertex maps original -> witness).
        """
        kinds = self.ctx.child_types
        live = [
            (r, a)
            for r, a in anchors
            if kinds[self.tables[r].anchor_sid(a)]
        ]
        stripped = [(r, a) for r, a in anchors if (r, a) not in live]

        if not live:
            tree = Forest.from_edges(1, [])
            maps = {r: {a[0]: 0} for r, a in anchors}
            return tree, 0, maps
        if len(live) == 1:
            r, a = live[0]
            verts = self.tables[r].anchor_vertices(a)
            local = {v: i for i, v in enumerate(verts)}
            in_set = set(verts)
            edges = [
                (local[u], local[w])
                for u in verts
                for w in self.trees[r].adj[u]
                if u < w and w in in_set
            ]
            tree = Forest.from_edges(len(verts), edges)
            maps = {r: dict(local)}
            root = local[a[0]]
            for sr, sa in stripped:
                maps.setdefault(sr, {})[sa[0]] = root
            return tree, root, maps
        if len(live) == 2:
            (ra, aa), (rb, ab) = live
            if ra > rb:
                (ra, aa), (rb, ab) = (rb, ab), (ra, aa)
            eng = self.pair[(ra, rb)]
            pairs = eng.extract(aa, ab)
            verts_a = sorted(self.tables[ra].anchor_vertices(aa))
            verts_b = sorted(self.tables[rb].anchor_vertices(ab))
            tree, ea, eb = _glue_union(
                self.trees[ra], verts_a, self.trees[rb], verts_b, pairs
            )
            root = ea.mapping[aa[0]]
            maps = {ra: dict(ea.mapping), rb: dict(eb.mapping)}
            for sr, sa in stripped:
                maps.setdefault(sr, {})[sa[0]] = root
            return tree, root, maps

        # three live anchors: materialize the optimal partition
        shapes = [self.tables[r].anchor_sid(a) for r, a in live]
        _, plan = self._partition_min(
            self._expand_children(shapes[0]),
            self._expand_children(shapes[1]),
            self._expand_children(shapes[2]),
            want_plan=True,
        )
        # concrete children grouped by shape, consumed in sorted order
        pools: list[dict[int, list[int]]] = []
        for (r, a) in live:
            pool: dict[int, list[int]] = {}
            for v, s in sorted(self.tables[r].anchor_children(a)):
                pool.setdefault(s, []).append(v)
            pools.append(pool)

        edges: list[tuple[int, int]] = []
        maps: dict[int, dict[int, int]] = {r: {} for r, _ in anchors}
        for r, a in anchors:
            maps[r][a[0]] = 0
        total = 1
        for part in plan:
            sub_anchors: list[tuple[int, Anchor]] = []
            for slot, shape in enumerate(part):
                if shape is None:
                    continue
                role, anchor = live[slot]
                child = pools[slot][shape].pop(0)
                sub_anchors.append((role, (child, anchor[0])))
            sub_tree, sub_root, sub_maps = self.build_witness(sub_anchors)
            offset = total
            edges.extend(
                (a1 + offset, b1 + offset) for a1, b1 in sub_tree.edges()
            )
            edges.append((0, sub_root + offset))
            for role, m in sub_maps.items():
                for orig, local in m.items():
                    maps[role][orig] = local + offset
            total += sub_tree.n
        tree = Forest.from_edges(total, edges)
        return tree, 0, maps


@dataclass
class Exact3Result:
    order: int
    tree: Forest
    embeddings: list[Embedding]
    kind: int  # 1 = disjoint pair + join path, 2 = shared-vertex DP
    stats: Exact3Stats = field(default_factory=Exact3Stats)


def _require_trees(trees: Sequence[Forest]) -> None:
    for i, t in enumerate(trees):
        if not t.is_tree():
            raise NotConnected(f"input {i} must be a nonempty tree")


def dp_type2(
    t1: Forest,
    t2: Forest,
    t3: Forest,
    roots: tuple[int, int, int],
    cap: int = DEFAULT_PARTITION_CAP,
) -> tuple[int, Forest, list[Embedding]]:
    """Minimum rooted supertree realizing the three given root anchors."""
    trees = [t1, t2, t3]
    _require_trees(trees)
    eng = _Engine3(trees, cap)
    anchors: list[tuple[int, Anchor]] = [
        (i, (roots[i], None)) for i in range(3)
    ]
    order = eng.f_anchors(anchors)
    tree, _, maps = eng.build_witness(anchors)
    assert tree.n == order
    return order, tree, [Embedding(maps[i]) for i in range(3)]


def _join_tree(tj: Forest, tk: Forest, u: int, v: int, path_order: int) -> Forest:
    """Disjoint copies of tj and tk linked by a path of the given order,
    identifying its endpoints with u in tj and v in tk."""
    off_k = tj.n
    edges = list(tj.edges())
    edges.extend((a + off_k, b + off_k) for a, b in tk.edges())
    interior = path_order - 2
    prev = u
    nxt = tj.n + tk.n
    for _ in range(interior):
        edges.append((prev, nxt))
        prev = nxt
        nxt += 1
    edges.append((prev, off_k + v))
    return Forest.from_edges(nxt, edges)


def type1_min(
    ti: Forest,
    tj: Forest,
    tk: Forest,
    max_path_order: Optional[int] = None,
    prune_above: Optional[int] = None,
) -> tuple[int, Optional[SupertreeResult], Optional[Forest]]:
    """Smallest supertree containing disjoint copies of tj and tk.

    Enumerates every join of tj and tk by a path (both endpoints
    identified with tree vertices) and takes the two-tree supertree with
    ti.  Returns (order, supertree-of-ti-and-join, join); candidates whose
    join alone is bigger than `prune_above` cannot win and are skipped.
    """
    _require_trees([ti, tj, tk])
    top = max_path_order if max_path_order is not None else ti.n + 1
    best: tuple[int, Optional[SupertreeResult], Optional[Forest]] = (
        ti.n + tj.n + tk.n + top,
        None,
        None,
    )
    from .forest import tree_canonical
    from .pairwise import build_engine

    for path_order in range(2, top + 1):
        join_order = tj.n + tk.n + path_order - 2
        bound = best[0] if prune_above is None else min(best[0], prune_above)
        if join_order > bound:
            break
        seen: set[bytes] = set()
        for u in range(tj.n):
            for v in range(tk.n):
                join = _join_tree(tj, tk, u, v, path_order)
                code = tree_canonical(join).code
                if code in seen:
                    continue
                seen.add(code)
                eng = build_engine(ti, join)
                _, _, mcs = eng.best_roots()
                order = ti.n + join.n - mcs
                if order < best[0]:
                    best = (order, None, join)
    if best[2] is not None:
        result = supertree2(ti, best[2])
        best = (best[0], result, best[2])
    return best


def exact3_supertree(
    t1: Forest,
    t2: Forest,
    t3: Forest,
    cap: int = DEFAULT_PARTITION_CAP,
) -> Exact3Result:
    """Exact minimum supertree of three trees with certificates.

    Takes the minimum over all disjoint-pair joins (three pair choices)
    and over the shared-vertex DP for every root triple; the greedy result
    seeds the incumbent used for pruning only.
    """
    trees = [t1, t2, t3]
    _require_trees(trees)
    greedy_result, _ = greedy_supertree(trees)
    incumbent = greedy_result.order

    eng = _Engine3(trees, cap)

    best2: Optional[tuple[int, list[tuple[int, Anchor]]]] = None
    reps = [eng.tables[i].distinct_root_reps() for i in range(3)]
    triples = []
    for s1, u1 in reps[0]:
        for s2, u2 in reps[1]:
            lb12 = eng.pair_cost(0, s1, 1, s2)
            if lb12 > incumbent:
                continue
            for s3, u3 in reps[2]:
                lb = max(
                    lb12,
                    eng.pair_cost(0, s1, 2, s3),
                    eng.pair_cost(1, s2, 2, s3),
                )
                if lb <= incumbent:
                    triples.append((lb, s1, s2, s3, u1, u2, u3))
    triples.sort()
    for lb, s1, s2, s3, u1, u2, u3 in triples:
        if lb > incumbent:
            continue
        val = eng.f3(s1, s2, s3)
        if best2 is None or val < best2[0]:
            best2 = (val, [(0, (u1, None)), (1, (u2, None)), (2, (u3, None))])
            incumbent = min(incumbent, val)

    best1: Optional[tuple[int, int, SupertreeResult, Forest]] = None
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        order, result, join = type1_min(
            trees[i], trees[j], trees[k], prune_above=incumbent
        )
        if result is not None and order <= incumbent:
            if best1 is None or order < best1[0]:
                best1 = (order, i, result, join)
                incumbent = min(incumbent, order)

    if best2 is not None and (best1 is None or best2[0] <= best1[0]):
        order, anchors = best2
        tree, _, maps = eng.build_witness(anchors)
        assert tree.n == order
        return Exact3Result(
            order, tree, [Embedding(maps[i]) for i in range(3)], 2, eng.stats
        )
    assert best1 is not None
    order, i, result, join = best1
    j, k = [x for x in range(3) if x != i]
    embeddings: list[Optional[Embedding]] = [None, None, None]
    embeddings[i] = result.embed1
    join_emb = result.embed2.mapping
    embeddings[j] = Embedding(
        {v: join_emb[v] for v in range(trees[j].n)}
    )
    off = trees[j].n
    embeddings[k] = Embedding(
        {v: join_emb[v + off] for v in range(trees[k].n)}
    )
    assert result.tree.n == order
    return Exact3Result(order, result.tree, embeddings, 1, eng.stats)  # type: ignore[arg-type]
