"""Enumeration of pairwise non-isomorphic trees and forests, and the
rooted-class catalog that drives the census-vector dynamic program."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded
from .forest import (
    CanonicalCode,
    Forest,
    root_at,
    rooted_canonical,
    tree_canonical,
)

_TREES: dict[int, list[Forest]] = {}
_FOREST_CACHE: dict[int, list[Forest]] = {}


def trees_of_order(n: int) -> list[Forest]:
    """All free trees of order n up to isomorphism, sorted by canonical code.

    Generated by attaching a leaf to every vertex of every tree of order
    n-1 and deduplicating; results are cached per order.
    """
    if n < 1:
        return []
    if n in _TREES:
        return _TREES[n]
    if n == 1:
        out = [Forest.from_edges(1, [])]
    else:
        seen: dict[bytes, Forest] = {}
        for base in trees_of_order(n - 1):
            edges = base.edges()
            for v in range(base.n):
                cand = Forest.from_edges(n, edges + [(v, n - 1)])
                code = tree_canonical(cand).code
                if code not in seen:
                    seen[code] = cand
        out = [seen[c] for c in sorted(seen)]
    _TREES[n] = out
    return out


def forests_of_order(n: int) -> list[Forest]:
    """All forests of order n up to isomorphism (component multisets)."""
    if n == 0:
        return [Forest.from_edges(0, [])]
    if n in _FOREST_CACHE:
        return _FOREST_CACHE[n]
    out: list[Forest] = []

    def build(parts: list[Forest]) -> Forest:
        edges: list[tuple[int, int]] = []
        base = 0
        for p in parts:
            edges.extend((base + a, base + b) for a, b in p.edges())
            base += p.n
        return Forest.from_edges(base, edges)

    def rec(remaining: int, max_order: int, max_index: int, acc: list[Forest]) -> None:
        if remaining == 0:
            out.append(build(acc))
            return
        for size in range(min(remaining, max_order), 0, -1):
            choices = trees_of_order(size)
            hi = max_index if size == max_order else len(choices) - 1
            for idx in range(hi, -1, -1):
                acc.append(choices[idx])
                rec(remaining - size, size, idx, acc)
                acc.pop()

    rec(n, n, len(trees_of_order(n)) - 1, [])
    _FOREST_CACHE[n] = out
    return out


@dataclass(frozen=True)
class RootedClass:
    """One rooted-isomorphism class (S, s) of a catalog tree."""

    index: int
    tree_index: int
    order: int
    tree: Forest
    root: int
    code: bytes
    child_classes: tuple[int, ...]  # rooted classes of S - s, sorted


@dataclass
class TreeCatalog:
    """All trees of order <= delta with all their rooted versions."""

    delta: int
    trees: list[Forest]
    orders: list[int]
    codes: list[bytes]
    rooted: list[RootedClass]
    _by_code: dict[bytes, int]
    _rooted_by_code: dict[bytes, int]

    @property
    def q(self) -> int:
        return len(self.trees)

    def tree_index(self, code: CanonicalCode | bytes) -> int:
        key = code.code if isinstance(code, CanonicalCode) else code
        return self._by_code[key]

    def rooted_index(self, code: bytes) -> int:
        return self._rooted_by_code[code]

    def unit_vector(self, tree_index: int) -> tuple[int, ...]:
        return tuple(1 if i == tree_index else 0 for i in range(self.q))


def build_catalog(delta: int, cap: int = 6) -> TreeCatalog:
    """Catalog of all trees of order <= delta and their rooted classes."""
    if delta < 1:
        raise CapExceeded("delta must be at least 1")
    if delta > cap:
        raise CapExceeded(f"delta {delta} exceeds the configured cap {cap}")
    trees: list[Forest] = []
    for n in range(1, delta + 1):
        trees.extend(trees_of_order(n))
    codes = [tree_canonical(t).code for t in trees]
    by_code = {c: i for i, c in enumerate(codes)}

    rooted: list[RootedClass] = []
    rooted_by_code: dict[bytes, int] = {}
    # ascending order so child classes always exist before their parents
    for ti, tree in enumerate(trees):
        for r in range(tree.n):
            rf = root_at(tree, [r])
            code = rooted_canonical(rf, r).code
            if code in rooted_by_code:
                continue
            kids = sorted(
                rooted_by_code[rooted_canonical(rf, c).code]
                for c in rf.children(r)
            )
            rc = RootedClass(
                index=len(rooted),
                tree_index=ti,
                order=tree.n,
                tree=tree,
                root=r,
                code=code,
                child_classes=tuple(kids),
            )
            rooted.append(rc)
            rooted_by_code[code] = rc.index
    return TreeCatalog(
        delta=delta,
        trees=trees,
        orders=[t.n for t in trees],
        codes=codes,
        rooted=rooted,
        _by_code=by_code,
        _rooted_by_code=rooted_by_code,
    )
