"""Exponential-time ground-truth solvers for desk-scale instances.

Both oracles enumerate candidates from first principles (vertex subsets of
the smallest input, or all non-isomorphic forests of increasing order) and
check them with the generic containment test.  Budgets turn "too big" into
an explicit error, never into a silent wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .catalog import forests_of_order, trees_of_order
from .embed import _Budget, contains_induced
from .errors import BudgetExceeded
from .forest import (
    Embedding,
    Forest,
    component_vertex_sets,
    components,
    forest_canonical,
    tree_canonical,
)


@dataclass(frozen=True)
class OracleBudget:
    max_host_order: int = 16
    max_subset_order: int = 16
    node_budget: Optional[int] = 5_000_000


@dataclass
class OracleResult:
    order: int
    forest: Forest
    embeddings: list[Embedding]


# containment of a connected pattern in a connected host is isomorphism
# invariant, so results are shared across calls via canonical codes
_TREE_CONTAIN_CACHE: dict[tuple[bytes, bytes], bool] = {}


def _contains_cached(pattern: Forest, host: Forest, budget: _Budget) -> bool:
    if pattern.n > host.n:
        return False
    if pattern.is_tree():
        pcode = tree_canonical(pattern).code
        hit = True
        for comp_vs in component_vertex_sets(host):
            if len(comp_vs) < pattern.n:
                continue
            comp = host.induced(comp_vs)
            key = (pcode, tree_canonical(comp).code)
            found = _TREE_CONTAIN_CACHE.get(key)
            if found is None:
                budget.tick(pattern.n)
                found = contains_induced(pattern, comp) is not None
                _TREE_CONTAIN_CACHE[key] = found
            if found:
                return True
        return False
    budget.tick(pattern.n)
    return contains_induced(pattern, host, budget) is not None


def oracle_max_subforest(
    forests: Sequence[Forest],
    budget: Optional[OracleBudget] = None,
    connected: bool = False,
) -> OracleResult:
    """Maximum common induced subforest by subset enumeration.

    Enumerates vertex subsets of a smallest input in decreasing size,
    deduplicates by canonical form, and tests containment in every other
    input.  With `connected=True` only connected candidates count.
    """
    if not forests:
        raise ValueError("need at least one forest")
    budget = budget or OracleBudget()
    base_idx = min(range(len(forests)), key=lambda i: (forests[i].n, i))
    base = forests[base_idx]
    if base.n > budget.max_subset_order:
        raise BudgetExceeded(
            f"smallest input order {base.n} exceeds maxSubsetOrder"
        )
    others = [i for i in range(len(forests)) if i != base_idx]
    ticker = _Budget(budget.node_budget)
    seen: set[bytes] = set()
    lo = 1 if connected else 0
    for size in range(base.n, lo - 1, -1):
        for subset in combinations(range(base.n), size):
            ticker.tick()
            cand = base.induced(list(subset))
            if connected and len(component_vertex_sets(cand)) != 1:
                continue
            code = forest_canonical(cand).code
            if code in seen:
                continue
            seen.add(code)
            if all(_contains_cached(cand, forests[i], ticker) for i in others):
                embeddings: list[Embedding] = []
                for i in range(len(forests)):
                    if i == base_idx:
                        embeddings.append(
                            Embedding({k: subset[k] for k in range(size)})
                        )
                    else:
                        emb = contains_induced(cand, forests[i], ticker)
                        assert emb is not None
                        embeddings.append(emb)
                return OracleResult(size, cand, embeddings)
    raise BudgetExceeded("no common subforest found (empty connected search)")


def oracle_min_superforest(
    forests: Sequence[Forest],
    budget: Optional[OracleBudget] = None,
    trees_only: Optional[bool] = None,
    find_all_min: bool = False,
) -> OracleResult | tuple[OracleResult, list[Forest]]:
    """Minimum superforest by candidate enumeration of increasing order.

    With `trees_only` unset, tree candidates are enumerated exactly when
    every input is a tree (every minimum superforest of trees is a tree);
    passing False scans all forests so that property can be *tested*.
    With `find_all_min=True` also returns every minimum-order witness up
    to isomorphism.
    """
    if not forests:
        raise ValueError("need at least one forest")
    budget = budget or OracleBudget()
    if trees_only is None:
        trees_only = all(f.is_tree() for f in forests)
    start = max((f.n for f in forests), default=0)
    ticker = _Budget(budget.node_budget)
    need_deg = max((f.max_degree() for f in forests), default=0)
    check_order = sorted(range(len(forests)), key=lambda i: -forests[i].n)

    def finish(cand: Forest) -> OracleResult:
        embeddings = []
        for f in forests:
            emb = contains_induced(f, cand, ticker)
            assert emb is not None
            embeddings.append(emb)
        return OracleResult(cand.n, cand, embeddings)

    if start == 0:
        empty = Forest.from_edges(0, [])
        result = OracleResult(0, empty, [Embedding({}) for _ in forests])
        return (result, [empty]) if find_all_min else result

    for order in range(start, budget.max_host_order + 1):
        candidates = trees_of_order(order) if trees_only else forests_of_order(order)
        hits: list[Forest] = []
        for cand in candidates:
            if cand.max_degree() < need_deg:
                continue
            if all(_contains_cached(forests[i], cand, ticker) for i in check_order):
                hits.append(cand)
                if not find_all_min:
                    return finish(cand)
        if hits:
            return finish(hits[0]), hits
    raise BudgetExceeded(f"no superforest of order <= {budget.max_host_order} found")
