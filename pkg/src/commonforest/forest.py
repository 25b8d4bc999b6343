"""Core forest representation, I/O, rootings, and canonical forms.

A forest is an undirected simple acyclic graph on dense 0-based vertex ids.
Everything downstream (matching DPs, supertree construction, generators)
works on this one representation; extracted subgraphs are always relabeled
back to dense ids.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BadRoots, NotAForest, NotConnected, ParseError


@dataclass(frozen=True)
class Forest:
    """Immutable forest: vertex count plus sorted adjacency lists."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Forest":
        """Build and validate a forest on vertices 0..n-1 from an edge list."""
        if n < 0:
            raise ParseError(f"negative vertex count {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u},{v}) out of range for order {n}")
            if u == v:
                raise NotAForest(f"self-loop at {u}")
            if v in nbrs[u]:
                raise NotAForest(f"parallel edge ({u},{v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        forest = cls(n, tuple(tuple(sorted(s)) for s in nbrs))
        if m != n - forest.component_count():
            raise NotAForest("cycle detected")
        return forest

    @classmethod
    def path(cls, n: int) -> "Forest":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> "Forest":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def component_count(self) -> int:
        return len(component_vertex_sets(self))

    def is_tree(self) -> bool:
        return self.n >= 1 and self.component_count() == 1

    def induced(self, vertices: Sequence[int]) -> "Forest":
        """Induced subforest on `vertices`, relabeled in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise ValueError("duplicate vertices")
        edges = [
            (index[u], index[v])
            for u in vertices
            for v in self.adj[u]
            if u < v and v in index
        ]
        return Forest.from_edges(len(vertices), edges)


def component_vertex_sets(forest: Forest) -> list[list[int]]:
    """Vertex lists of the connected components, each sorted ascending."""
    seen = [False] * forest.n
    out: list[list[int]] = []
    for start in range(forest.n):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        comp = [start]
        while stack:
            u = stack.pop()
            for v in forest.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        out.append(sorted(comp))
    return out


def components(forest: Forest) -> list[Forest]:
    """Split into connected parts, ids relabeled to 0..order-1 per part."""
    return [forest.induced(vs) for vs in component_vertex_sets(forest)]


@dataclass(frozen=True)
class RootedForest:
    """A forest plus a parent orientation, one root per component."""

    base: Forest
    parent: tuple[Optional[int], ...]
    roots: tuple[int, ...]
    depth: tuple[int, ...]
    subtree_size: tuple[int, ...]

    def children(self, v: int) -> list[int]:
        return [w for w in self.base.adj[v] if self.parent[w] == v]


def root_at(forest: Forest, roots: Sequence[int]) -> RootedForest:
    """Orient every component away from its designated root."""
    comps = component_vertex_sets(forest)
    comp_of = {}
    for idx, vs in enumerate(comps):
        for v in vs:
            comp_of[v] = idx
    hit = [0] * len(comps)
    for r in roots:
        if not (0 <= r < forest.n):
            raise BadRoots(f"root {r} out of range")
        hit[comp_of[r]] += 1
    if len(roots) != len(comps) or any(h != 1 for h in hit):
        raise BadRoots("roots must hit each component exactly once")

    parent: list[Optional[int]] = [None] * forest.n
    depth = [0] * forest.n
    order: list[int] = []
    for r in roots:
        stack = [r]
        visited = {r}
        while stack:
            u = stack.pop()
            order.append(u)
            for v in forest.adj[u]:
                if v not in visited:
                    visited.add(v)
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    stack.append(v)
    size = [1] * forest.n
    for u in reversed(order):
        p = parent[u]
        if p is not None:
            size[p] += size[u]
    return RootedForest(forest, tuple(parent), tuple(roots), tuple(depth), tuple(size))


def root_components_at_min(forest: Forest) -> RootedForest:
    """Deterministic rooting: smallest vertex id of each component."""
    return root_at(forest, [vs[0] for vs in component_vertex_sets(forest)])


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Nested-parenthesis code; equal codes iff isomorphic (rooted or free)."""

    code: bytes
    order: int


def _subtree_code(rooted: RootedForest, v: int) -> bytes:
    # Iterative AHU: children codes sorted and wrapped.
    done: dict[int, bytes] = {}
    stack: list[tuple[int, bool]] = [(v, False)]
    while stack:
        u, expanded = stack.pop()
        kids = rooted.children(u)
        if not expanded:
            stack.append((u, True))
            stack.extend((k, False) for k in kids)
        else:
            done[u] = b"(" + b"".join(sorted(done[k] for k in kids)) + b")"
    return done[v]


def rooted_canonical(rooted: RootedForest, v: int) -> CanonicalCode:
    """Canonical code of the subtree hanging at `v` under this rooting."""
    if not (0 <= v < rooted.base.n):
        raise ValueError(f"vertex {v} out of range")
    return CanonicalCode(_subtree_code(rooted, v), rooted.subtree_size[v])


def tree_centers(tree: Forest) -> list[int]:
    """The one or two center vertices of a tree (leaf peeling)."""
    n = tree.n
    if n == 1:
        return [0]
    deg = [tree.degree(v) for v in range(n)]
    layer = [v for v in range(n) if deg[v] <= 1]
    removed = len(layer)
    while removed < n:
        nxt = []
        for u in layer:
            for v in tree.adj[u]:
                deg[v] -= 1
                if deg[v] == 1:
                    nxt.append(v)
        removed += len(nxt)
        layer = nxt
    return sorted(layer)


def tree_canonical(tree: Forest) -> CanonicalCode:
    """Canonical code of a free tree: minimum over center rootings."""
    if not tree.is_tree():
        raise NotConnected("tree_canonical needs a connected nonempty forest")
    best = min(
        _subtree_code(root_at(tree, [c]), c) for c in tree_centers(tree)
    )
    return CanonicalCode(best, tree.n)


def forest_canonical(forest: Forest) -> CanonicalCode:
    """Canonical code of a forest: sorted component codes, '.'-joined."""
    codes = sorted(tree_canonical(c).code for c in components(forest))
    return CanonicalCode(b".".join(codes), forest.n)


@dataclass(frozen=True)
class Embedding:
    """Injective vertex map witnessing an induced-subforest relation."""

    mapping: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.mapping)

    def compose(self, outer: "Embedding") -> "Embedding":
        """self into A, outer A into B: result maps self's domain into B."""
        return Embedding({v: outer.mapping[w] for v, w in self.mapping.items()})


def identity_embedding(forest: Forest) -> Embedding:
    return Embedding({v: v for v in range(forest.n)})


# ---------------------------------------------------------------------------
# Edge-list format:  comment lines start with '#', each forest block starts
# with a 'forest <n>' header followed by one '<u> <v>' line per edge.
# ---------------------------------------------------------------------------

def parse_forests(text: str) -> list[Forest]:
    forests: list[Forest] = []
    header: Optional[int] = None
    edges: list[tuple[int, int]] = []

    def flush() -> None:
        nonlocal header, edges
        if header is not None:
            forests.append(Forest.from_edges(header, edges))
        header, edges = None, []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "forest":
            flush()
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: bad header {line!r}")
            try:
                header = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad order {parts[1]!r}") from None
            if header < 0:
                raise ParseError(f"line {lineno}: negative order")
        else:
            if header is None:
                raise ParseError(f"line {lineno}: edge before 'forest' header")
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected '<u> <v>', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer edge {line!r}") from None
            edges.append((u, v))
    flush()
    return forests


def parse_forest(text: str) -> Forest:
    forests = parse_forests(text)
    if len(forests) != 1:
        raise ParseError(f"expected exactly one forest block, found {len(forests)}")
    return forests[0]


def format_forest(forest: Forest) -> str:
    lines = [f"forest {forest.n}"]
    lines.extend(f"{u} {v}" for u, v in forest.edges())
    return "\n".join(lines) + "\n"


def format_forests(forests: Iterable[Forest]) -> str:
    return "".join(format_forest(f) for f in forests)


def to_dot(forest: Forest, name: str = "F") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(forest.n) if not forest.adj[v])
    lines.extend(f"  {u} -- {v};" for u, v in forest.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

def _random_tree(order: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform random labeled tree on 0..order-1 (Pruefer decoding)."""
    if order <= 1:
        return []
    if order == 2:
        return [(0, 1)]
    seq = [rng.randrange(order) for _ in range(order - 2)]
    deg = [1] * order
    for x in seq:
        deg[x] += 1
    edges = []
    import heapq

    leaves = [v for v in range(order) if deg[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def random_forest(
    seed: int,
    order: int,
    profile: Optional[Sequence[int] | str] = None,
) -> Forest:
    """Deterministic random forest.

    `profile` gives the component orders; `None` means a single tree and
    the string "random" draws a random composition of `order` from the
    same seeded generator.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    rng = random.Random(seed)
    if profile is None:
        parts = [order] if order else []
    elif profile == "random":
        parts = []
        left = order
        while left:
            p = rng.randint(1, left)
            parts.append(p)
            left -= p
    else:
        parts = list(profile)
        if sum(parts) != order or any(p < 1 for p in parts):
            raise ValueError("profile must be positive and sum to order")
    edges: list[tuple[int, int]] = []
    base = 0
    for p in parts:
        edges.extend((base + a, base + b) for a, b in _random_tree(p, rng))
        base += p
    return Forest.from_edges(order, edges)


def random_tree(seed: int, order: int) -> Forest:
    if order < 1:
        raise ValueError("order must be positive")
    return random_forest(seed, order)


def relabel(forest: Forest, perm: Sequence[int]) -> Forest:
    """Apply the permutation old-id -> new-id."""
    return Forest.from_edges(forest.n, [(perm[u], perm[v]) for u, v in forest.edges()])
