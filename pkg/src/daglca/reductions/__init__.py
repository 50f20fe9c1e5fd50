"""Reductions from clique-type problems to LCA problems, with brute-force oracles."""

from .gadgets import (
    SCHEMES,
    GadgetInstance,
    add_one_lca,
    build_four_clique_gadget,
    build_hyperclique_gadget,
    build_verlca_gadget,
    required_groups,
    solve_4clique_via_countlca,
    solve_4hyperclique_via_verlca,
    solve_hyperclique_via_eqlca,
    verlca_candidates,
)
from .hypergraph import (
    FourPartiteGraph,
    Hypergraph3,
    brute_4clique,
    brute_hyperclique,
    extends_to_hyperclique,
    random_four_partite,
    random_partitioned_hypergraph,
)

__all__ = [
    "SCHEMES",
    "FourPartiteGraph",
    "GadgetInstance",
    "Hypergraph3",
    "add_one_lca",
    "brute_4clique",
    "brute_hyperclique",
    "build_four_clique_gadget",
    "build_hyperclique_gadget",
    "build_verlca_gadget",
    "extends_to_hyperclique",
    "random_four_partite",
    "random_partitioned_hypergraph",
    "required_groups",
    "solve_4clique_via_countlca",
    "solve_4hyperclique_via_verlca",
    "solve_hyperclique_via_eqlca",
    "verlca_candidates",
]
