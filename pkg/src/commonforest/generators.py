"""Named instance families: caterpillars, the greedy-tightness triple, and
the hardness-reduction constructions from 3-PARTITION and 3-dimensional
matching (the constructions only; nothing here solves those problems)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InvalidInstance
from .forest import Embedding, Forest
from .verify import check_embedding


@dataclass(frozen=True)
class Caterpillar:
    """Spine path u_1..u_p with a chosen number of pendant leaves per u_i."""

    tree: Forest
    spine: tuple[int, ...]
    leaves: tuple[tuple[int, ...], ...]


def caterpillar(counts: Sequence[int]) -> Caterpillar:
    p = len(counts)
    if p < 1:
        raise InvalidInstance("need at least one spine vertex")
    if any(c < 0 for c in counts):
        raise InvalidInstance("leaf counts must be nonnegative")
    edges = [(i, i + 1) for i in range(p - 1)]
    leaves: list[tuple[int, ...]] = []
    nxt = p
    for i, c in enumerate(counts):
        mine = tuple(range(nxt, nxt + c))
        leaves.append(mine)
        edges.extend((i, leaf) for leaf in mine)
        nxt += c
    return Caterpillar(Forest.from_edges(nxt, edges), tuple(range(p)), tuple(leaves))


def _align_caterpillar(pat: Caterpillar, host: Caterpillar) -> Embedding:
    """Embed a caterpillar into a caterpillar by sliding the spine profile."""
    pc = [len(l) for l in pat.leaves]
    hc = [len(l) for l in host.leaves]
    p, h = len(pc), len(hc)
    for flip in (False, True):
        prof = pc[::-1] if flip else pc
        order = pat.spine[::-1] if flip else pat.spine
        lvs = pat.leaves[::-1] if flip else pat.leaves
        for off in range(h - p + 1):
            if all(hc[off + j] >= prof[j] for j in range(p)):
                mapping: dict[int, int] = {}
                for j in range(p):
                    mapping[order[j]] = host.spine[off + j]
                    for t, leaf in enumerate(lvs[j]):
                        mapping[leaf] = host.leaves[off + j][t]
                return Embedding(mapping)
    raise InvalidInstance("profile alignment failed")


@dataclass(frozen=True)
class TightnessParams:
    a: int
    b: int
    c: int

    def validate(self) -> None:
        if not (self.a > self.b > self.c >= 1):
            raise InvalidInstance("need a > b > c >= 1")


@dataclass
class TightnessFamily:
    params: TightnessParams
    trees: tuple[Forest, Forest, Forest]
    known_supertree: Forest
    embeddings: tuple[Embedding, Embedding, Embedding]

    @property
    def known_order(self) -> int:
        p = self.params
        return 3 * p.a + 3 * p.b + 2 * p.c + 12


def gen_tightness(a: int, b: int, c: int) -> TightnessFamily:
    """The three caterpillars on which the rotation-fold greedy is off by
    a factor approaching 4/3, plus their known small supertree."""
    params = TightnessParams(a, b, c)
    params.validate()
    t1 = caterpillar([0, b, a, a, c, 0])
    t2 = caterpillar([0, b, 0, a, 0, 0, 0, a, 0])
    t3 = caterpillar([0, b, 0, 0, 0, 0, 0, a, 0, c, a, 0])
    sup = caterpillar([0, b, 0, 0, b, b, a, a, c, c, a, 0])
    embs = []
    for t in (t1, t2, t3):
        emb = _align_caterpillar(t, sup)
        if not check_embedding(t.tree, sup.tree, emb):
            raise InvalidInstance("tightness containment check failed")
        embs.append(emb)
    fam = TightnessFamily(
        params, (t1.tree, t2.tree, t3.tree), sup.tree, tuple(embs)
    )
    assert fam.known_supertree.n == fam.known_order
    return fam


@dataclass(frozen=True)
class ThreePartitionInstance:
    m: int
    values: tuple[int, ...]

    @property
    def target(self) -> int:
        return sum(self.values) // self.m

    def validate(self) -> None:
        if self.m < 1 or len(self.values) != 3 * self.m:
            raise InvalidInstance("need exactly 3m positive values")
        if any(v < 1 for v in self.values):
            raise InvalidInstance("values must be positive")
        total = sum(self.values)
        if total % self.m:
            raise InvalidInstance("target A is not integral")
        a_target = total // self.m
        if any(not (4 * v > a_target and 2 * v < a_target) for v in self.values):
            raise InvalidInstance("values must satisfy A/4 < a_i < A/2")


@dataclass
class Prop1Pair:
    instance: ThreePartitionInstance
    t1: Forest
    t2: Forest
    f1: Forest
    f2: Forest
    r1: int
    r2: int


def _paths_plus_hub(orders: Sequence[int]) -> tuple[Forest, Forest, int]:
    """Disjoint paths, then one hub adjacent to the first vertex of each."""
    edges: list[tuple[int, int]] = []
    starts = []
    base = 0
    for p in orders:
        starts.append(base)
        edges.extend((base + i, base + i + 1) for i in range(p - 1))
        base += p
    f = Forest.from_edges(base, list(edges))
    hub = base
    edges.extend((hub, s) for s in starts)
    return f, Forest.from_edges(base + 1, edges), hub


def gen_prop1(inst: ThreePartitionInstance) -> Prop1Pair:
    """Two subdivided stars encoding a 3-PARTITION instance."""
    inst.validate()
    f1, t1, r1 = _paths_plus_hub(inst.values)
    f2, t2, r2 = _paths_plus_hub([inst.target + 2] * inst.m)
    assert f2.n == f1.n + 2 * inst.m
    return Prop1Pair(inst, t1, t2, f1, f2, r1, r2)


@dataclass(frozen=True)
class ThreeDmInstance:
    q: int
    triples: tuple[tuple[int, int, int], ...]  # 1-based element indices

    def validate(self) -> None:
        if self.q < 1 or not self.triples:
            raise InvalidInstance("need q >= 1 and at least one triple")
        counts: dict[tuple[str, int], int] = {}
        for (x, y, z) in self.triples:
            if not all(1 <= e <= self.q for e in (x, y, z)):
                raise InvalidInstance("triple element out of range")
            for key in (("x", x), ("y", y), ("z", z)):
                counts[key] = counts.get(key, 0) + 1
        for axis in "xyz":
            for e in range(1, self.q + 1):
                occ = counts.get((axis, e), 0)
                if occ < 1 or occ > 3:
                    raise InvalidInstance(
                        f"element {axis}_{e} occurs {occ} times, need 1..3"
                    )
        if len(set(self.triples)) != len(self.triples):
            raise InvalidInstance("duplicate triples")


@dataclass
class Thm1Triple:
    instance: ThreeDmInstance
    tx: Forest
    ty: Forest
    tz: Forest
    rx: int
    ry: int
    rz: int
    witness: Optional[Forest] = None
    meta: dict = field(default_factory=dict)


class _TreeBuilder:
    def __init__(self) -> None:
        self.edges: list[tuple[int, int]] = []
        self.n = 0

    def vertex(self) -> int:
        v = self.n
        self.n += 1
        return v

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def gadget(
        self, q: int, branch_marks: Sequence[Optional[Sequence[int]]]
    ) -> tuple[int, list[list[int]]]:
        """Hub plus three paths of order 2q; per branch either decorate the
        given distances with one new leaf each, or None for every distance."""
        hub = self.vertex()
        branches: list[list[int]] = []
        for marks in branch_marks:
            path = []
            prev = hub
            for _ in range(2 * q):
                v = self.vertex()
                self.edge(prev, v)
                path.append(v)
                prev = v
            chosen = range(1, 2 * q + 1) if marks is None else sorted(marks)
            for d in chosen:
                leaf = self.vertex()
                self.edge(path[d - 1], leaf)
            branches.append(path)
        return hub, branches

    def build(self) -> Forest:
        return Forest.from_edges(self.n, self.edges)


def gen_thm1(
    inst: ThreeDmInstance,
    matching: Optional[Sequence[tuple[int, int, int]]] = None,
) -> Thm1Triple:
    """Tree triple encoding a 3DM instance; optionally also the witness
    supertree certified by a perfect matching."""
    inst.validate()
    q = inst.q
    meta: dict = {}

    def element_tree(
        builder: _TreeBuilder, marks: Sequence[Optional[Sequence[int]]]
    ) -> tuple[int, list[list[int]]]:
        return builder.gadget(q, marks)

    # T_x
    bx = _TreeBuilder()
    rx = bx.vertex()
    for i in range(1, q + 1):
        owns = sorted(t for t in inst.triples if t[0] == i)
        marks: list[Optional[Sequence[int]]] = []
        for (_, yj, zk) in owns[:3]:
            marks.append([yj, q + zk])
        while len(marks) < 3:
            marks.append(None)
        hub, _ = element_tree(bx, marks)
        bx.edge(rx, hub)
    tx = bx.build()

    # T_y with bookkeeping for the witness construction
    by = _TreeBuilder()
    ry = by.vertex()
    relevant: dict[int, list[int]] = {}
    for j in range(1, q + 1):
        hub, branches = element_tree(by, [None, None, [j]])
        by.edge(ry, hub)
        relevant[j] = branches[2]
    ty = by.build()
    meta["relevant_branches_y"] = relevant

    # T_z
    bz = _TreeBuilder()
    rz = bz.vertex()
    for k in range(1, q + 1):
        hub, _ = element_tree(bz, [None, None, [q + k]])
        bz.edge(rz, hub)
    tz = bz.build()

    witness = None
    if matching is not None:
        chosen = tuple(matching)
        if any(t not in inst.triples for t in chosen):
            raise InvalidInstance("matching uses unknown triples")
        for axis in range(3):
            seen = sorted(t[axis] for t in chosen)
            if seen != list(range(1, q + 1)):
                raise InvalidInstance("matching is not perfect")
        edges = list(ty.edges())
        n = ty.n
        for (_, yj, zk) in chosen:
            attach_to = relevant[yj][q + zk - 1]
            edges.append((attach_to, n))
            n += 1
        witness = Forest.from_edges(n, edges)

    return Thm1Triple(inst, tx, ty, tz, rx, ry, rz, witness, meta)
