"""Greedy minimum supertree of k trees: fold the exact two-tree supertree
over every cyclic rotation of the input list and keep the smallest result."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyInput, NotConnected
from .forest import Embedding, Forest, identity_embedding
from .pairwise import supertree2


@dataclass
class GreedyTrace:
    per_rotation_orders: list[int]
    chosen_index: int
    bound: Fraction


@dataclass
class SetSupertreeResult:
    """A supertree of a whole set, with one embedding per input tree."""

    tree: Forest
    embeddings: list[Embedding]

    @property
    def order(self) -> int:
        return self.tree.n


def greedy_bound(k: int) -> Fraction:
    """Worst-case approximation factor of the rotation-fold greedy."""
    if k < 1:
        raise EmptyInput("k must be at least 1")
    return Fraction(k, 2) - Fraction(1, 2) + Fraction(1, k)


def _fold_rotation(trees: list[Forest], start: int) -> SetSupertreeResult:
    k = len(trees)
    order = [(start + j) % k for j in range(k)]
    current = trees[order[0]]
    embs: dict[int, Embedding] = {order[0]: identity_embedding(current)}
    for idx in order[1:]:
        step = supertree2(current, trees[idx])
        for i in embs:
            embs[i] = embs[i].compose(step.embed1)
        embs[idx] = step.embed2
        current = step.tree
    return SetSupertreeResult(current, [embs[i] for i in range(k)])


def greedy_supertree(trees: list[Forest]) -> tuple[SetSupertreeResult, GreedyTrace]:
    """Best rotation of the supertree fold, with its per-rotation trace.

    The output order is at most (k/2 - 1/2 + 1/k) times the optimum.
    """
    if not trees:
        raise EmptyInput("need at least one tree")
    for i, t in enumerate(trees):
        if not t.is_tree():
            raise NotConnected(f"input {i} is not a nonempty tree")
    k = len(trees)
    results = [_fold_rotation(trees, i) for i in range(k)]
    orders = [r.order for r in results]
    chosen = min(range(k), key=lambda i: (orders[i], i))
    trace = GreedyTrace(orders, chosen, greedy_bound(k))
    return results[chosen], trace
