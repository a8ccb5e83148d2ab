"""Fringe reductions of random plane trees.

Four reductions act on rooted plane trees: cutting all leaves, cutting
pendant paths, cutting old leaves (leaves that are leftmost children) and
cutting old paths.  The package computes the exact laws of the reduced tree
by enumeration and by generating functions, compares exact moments with
their asymptotic expansions, and samples uniform random trees for
central-limit experiments.

Modules:

* :mod:`treecuts.tree` - plane trees, parsing, structural counts
* :mod:`treecuts.reduction` - the four reductions and the totals P and S
* :mod:`treecuts.combinatorics` - Catalan, Narayana, Fibonacci and binary-height polynomials
* :mod:`treecuts.series` - exact truncated power series
* :mod:`treecuts.gf` - generating-function tables and moment tables
* :mod:`treecuts.ensemble` - enumeration and uniform sampling
* :mod:`treecuts.analysis` - distributions, asymptotics, constants, CLT experiments
* :mod:`treecuts.verify` - the cross-check suite
* :mod:`treecuts.cli` - the ``treecuts`` command
"""

from .analysis import (
    CONSTANTS,
    CLTReport,
    Distribution,
    MomentReport,
    UnsupportedStatistic,
    asymptotic_prediction,
    brute_distribution,
    clt_experiment,
    comparison_report,
    constant_alpha,
    gf_distribution,
    total_asymptotics,
    totals_report,
)
from .combinatorics import (
    binary_height_poly,
    catalan,
    fibonacci_poly,
    narayana_assoc_poly,
    narayana_number,
)
from .ensemble import enumerate_trees, random_state, sample_tree
from .gf import Variant, gf_table, moment_table
from .reduction import (
    NOT_REDUCIBLE,
    Mode,
    ReductionOutcome,
    reduce_iter,
    reduce_once,
    total_old_path_segments,
    total_paths,
)
from .tree import PlaneTree, parse_tree, serialize_tree, tree_metrics

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS", "CLTReport", "Distribution", "Mode", "MomentReport", "NOT_REDUCIBLE",
    "PlaneTree", "ReductionOutcome", "UnsupportedStatistic", "Variant",
    "asymptotic_prediction", "binary_height_poly", "brute_distribution", "catalan",
    "clt_experiment", "comparison_report", "constant_alpha", "enumerate_trees",
    "fibonacci_poly", "gf_distribution", "gf_table", "moment_table", "narayana_assoc_poly",
    "narayana_number", "parse_tree", "random_state", "reduce_iter", "reduce_once",
    "sample_tree", "serialize_tree", "total_asymptotics", "total_old_path_segments",
    "total_paths", "totals_report", "tree_metrics",
]
