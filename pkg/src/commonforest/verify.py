"""Independent re-verification of solver outputs.

Nothing here trusts solver bookkeeping: embeddings are re-checked against
the induced condition edge by edge, and witness structure (tree-ness,
component bounds) is recomputed from scratch.
"""

from __future__ import annotations

from typing import Sequence

from .forest import Embedding, Forest, components


def check_embedding(pattern: Forest, host: Forest, emb: Embedding) -> bool:
    """True iff `emb` maps pattern isomorphically onto an induced subgraph."""
    m = emb.mapping
    if set(m.keys()) != set(range(pattern.n)):
        return False
    image = set(m.values())
    if len(image) != pattern.n:
        return False
    if any(not (0 <= h < host.n) for h in image):
        return False
    for u, v in pattern.edges():
        if m[v] not in host.adj[m[u]]:
            return False
    induced_edges = sum(
        1 for u in image for v in host.adj[u] if u < v and v in image
    )
    return induced_edges == pattern.edge_count()


def check_common_subforest(
    witness: Forest,
    inputs: Sequence[Forest],
    embeddings: Sequence[Embedding],
    max_component: int | None = None,
) -> bool:
    if len(inputs) != len(embeddings):
        return False
    if max_component is not None:
        if any(c.n > max_component for c in components(witness)):
            return False
    return all(
        check_embedding(witness, host, emb)
        for host, emb in zip(inputs, embeddings)
    )


def check_supertree(
    witness: Forest,
    inputs: Sequence[Forest],
    embeddings: Sequence[Embedding],
    require_tree: bool = True,
) -> bool:
    if len(inputs) != len(embeddings):
        return False
    if require_tree and not witness.is_tree():
        return False
    return all(
        check_embedding(pattern, witness, emb)
        for pattern, emb in zip(inputs, embeddings)
    )
