"""Weighted binary search trees and a rotation-based hill climber.

Build a tree with one of the baseline constructions, then call
:func:`optimize` to lower its expected lookup cost by repeatedly bumping
the node whose single rotation pays off the most.
"""

from .tree import (
    NIL,
    InvalidTreeError,
    WeightedTree,
    load_tree,
    tree_from_links,
    tree_from_text,
)
from .weights import (
    QuerySampler,
    WeightProfile,
    entropy,
    load_profile,
    mehlhorn_bounds,
    save_profile,
    uniform_profile,
    zipf_profile,
    zipf_ranked_probs,
)
from .builders import (
    build,
    build_simple_random,
    build_splay,
    build_treap,
    build_weight_balanced,
)
from .optimal import DpTables, SizeCapExceeded, fill_tables, optimal_cost_only, optimal_tree
from .optimizer import (
    MeritQueue,
    OptimizeReport,
    OptimizerConfig,
    Termination,
    merit,
    merit_all,
    optimize,
    optimize_step,
)
from .bench import (
    ExperimentConfig,
    ExperimentRow,
    limited_bump_comparison,
    run_experiment,
    summarize,
    write_rows,
)
from . import oracle

__version__ = "0.1.0"

__all__ = [
    "NIL",
    "InvalidTreeError",
    "WeightedTree",
    "load_tree",
    "tree_from_links",
    "tree_from_text",
    "QuerySampler",
    "WeightProfile",
    "entropy",
    "load_profile",
    "mehlhorn_bounds",
    "save_profile",
    "uniform_profile",
    "zipf_profile",
    "zipf_ranked_probs",
    "build",
    "build_simple_random",
    "build_splay",
    "build_treap",
    "build_weight_balanced",
    "DpTables",
    "SizeCapExceeded",
    "fill_tables",
    "optimal_cost_only",
    "optimal_tree",
    "MeritQueue",
    "OptimizeReport",
    "OptimizerConfig",
    "Termination",
    "merit",
    "merit_all",
    "optimize",
    "optimize_step",
    "ExperimentConfig",
    "ExperimentRow",
    "limited_bump_comparison",
    "run_experiment",
    "summarize",
    "write_rows",
    "oracle",
]
