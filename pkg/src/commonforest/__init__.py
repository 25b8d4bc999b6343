"""Common induced subforests and superforests of sets of forests."""

from .forest import (
    CanonicalCode,
    Embedding,
    Forest,
    RootedForest,
    components,
    forest_canonical,
    parse_forest,
    parse_forests,
    format_forest,
    format_forests,
    random_forest,
    random_tree,
    root_at,
    rooted_canonical,
    to_dot,
    tree_canonical,
)
from .embed import contains_induced
from .matching import WeightMatrix, max_weight_matching
from .pairwise import (
    McsResult,
    SupertreeResult,
    mcs_rooted_anchored,
    mcs_trees,
    supertree2,
    supertree2_rooted,
)

__all__ = [
    "CanonicalCode",
    "Embedding",
    "Forest",
    "McsResult",
    "RootedForest",
    "SupertreeResult",
    "WeightMatrix",
    "components",
    "contains_induced",
    "forest_canonical",
    "format_forest",
    "format_forests",
    "max_weight_matching",
    "mcs_rooted_anchored",
    "mcs_trees",
    "parse_forest",
    "parse_forests",
    "random_forest",
    "random_tree",
    "root_at",
    "rooted_canonical",
    "supertree2",
    "supertree2_rooted",
    "to_dot",
    "tree_canonical",
]
