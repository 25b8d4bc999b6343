"""Exact maximum-weight bipartite matching and its capacitated variant.

Weights are nonnegative integers (they are tree orders), so everything is
solved with exact arithmetic via successive shortest augmenting paths on
the min-cost-flow formulation.  The capacitated form is the inner loop of
the common-subtree dynamic program, where identical child subtrees are
collapsed into one row/column with a multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class WeightMatrix:
    rows: int
    cols: int
    w: tuple[tuple[int, ...], ...]

    @classmethod
    def from_lists(cls, w: Sequence[Sequence[int]]) -> "WeightMatrix":
        rows = len(w)
        cols = len(w[0]) if rows else 0
        if any(len(r) != cols for r in w):
            raise ValueError("ragged weight matrix")
        if any(x < 0 for r in w for x in r):
            raise ValueError("weights must be nonnegative")
        return cls(rows, cols, tuple(tuple(r) for r in w))


def max_weight_transport(
    row_caps: Sequence[int],
    col_caps: Sequence[int],
    w: Sequence[Sequence[int]],
) -> tuple[int, dict[tuple[int, int], int]]:
    """Maximize sum x_ij * w_ij with row/column capacity constraints.

    Returns the optimal value and the per-pair unit counts.  Successive
    most-negative augmenting paths (Bellman-Ford on the residual graph);
    the bipartite graph has no negative cycles, so this is exact.
    """
    nr, nc = len(row_caps), len(col_caps)
    if nr == 0 or nc == 0:
        return 0, {}
    flow = [[0] * nc for _ in range(nr)]
    row_used = [0] * nr
    col_used = [0] * nc
    total = 0
    INF = float("inf")
    while True:
        # dist over nodes: rows 0..nr-1, cols nr..nr+nc-1; source is implicit.
        dist: list[float] = [0.0 if row_used[i] < row_caps[i] else INF for i in range(nr)]
        dist += [INF] * nc
        par: list[tuple[int, int] | None] = [None] * (nr + nc)
        for _ in range(nr + nc):
            changed = False
            for i in range(nr):
                di = dist[i]
                if di == INF:
                    continue
                wi = w[i]
                fi = flow[i]
                for j in range(nc):
                    nd = di - wi[j]
                    if nd < dist[nr + j]:
                        dist[nr + j] = nd
                        par[nr + j] = (0, i)
                        changed = True
                    # backward arc col -> row handled below using fi via cols
            for j in range(nc):
                dj = dist[nr + j]
                if dj == INF:
                    continue
                for i in range(nr):
                    if flow[i][j] > 0:
                        nd = dj + w[i][j]
                        if nd < dist[i]:
                            dist[i] = nd
                            par[i] = (1, j)
                            changed = True
            if not changed:
                break
        best_j, best_cost = -1, 0.0
        for j in range(nc):
            if col_used[j] < col_caps[j] and dist[nr + j] < best_cost:
                best_cost = dist[nr + j]
                best_j = j
        if best_j < 0:
            break
        # walk parents to find bottleneck, then push
        path: list[tuple[int, int]] = []  # (kind, index): 0=arrived at col via row
        node = nr + best_j
        bottleneck = col_caps[best_j] - col_used[best_j]
        while True:
            p = par[node]
            if node < nr:  # row node
                if p is None:
                    bottleneck = min(bottleneck, row_caps[node] - row_used[node])
                    break
                kind, j = p
                path.append((node, j))  # backward: reduce flow[node][j]
                bottleneck = min(bottleneck, flow[node][j])
                node = nr + j
            else:  # col node, predecessor is a row via forward arc
                kind, i = p  # type: ignore[misc]
                path.append((i, node - nr))
                node = i
        # path alternates forward/backward starting from the sink side
        sign = 1
        for i, j in path:
            if sign > 0:
                flow[i][j] += bottleneck
                total += w[i][j] * bottleneck
            else:
                flow[i][j] -= bottleneck
                total -= w[i][j] * bottleneck
            sign = -sign
        start_row = path[-1][0]
        row_used[start_row] += bottleneck
        col_used[best_j] += bottleneck
    pairs = {
        (i, j): flow[i][j]
        for i in range(nr)
        for j in range(nc)
        if flow[i][j] > 0
    }
    return total, pairs


def max_weight_matching(
    w: WeightMatrix | Sequence[Sequence[int]],
) -> tuple[int, list[tuple[int, int]]]:
    """Maximum-weight (not necessarily perfect) matching of a weight matrix.

    Zero-weight pairs are left unmatched; the value is unaffected.
    """
    if isinstance(w, WeightMatrix):
        mat: Sequence[Sequence[int]] = w.w
        rows, cols = w.rows, w.cols
    else:
        mat = w
        rows = len(mat)
        cols = len(mat[0]) if rows else 0
        if any(x < 0 for r in mat for x in r):
            raise ValueError("weights must be nonnegative")
    value, flow = max_weight_transport([1] * rows, [1] * cols, mat)
    pairing = sorted((i, j) for (i, j), units in flow.items() if mat[i][j] > 0)
    return value, pairing
