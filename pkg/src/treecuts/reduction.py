"""The four deterministic fringe reductions.

Removal is simultaneous: which nodes go is decided on the input tree, then
all of them are deleted at once.  The root is never removed.

* ``LEAVES``: every leaf.
* ``PATHS``: every node whose subtree is a path (this is exactly the set of
  maximal pendant chains ending in a leaf).
* ``OLD_LEAVES``: every leaf that is the first child of its parent.
* ``OLD_PATHS``: every first child whose subtree is a path.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .tree import PlaneTree, TreeMetrics, fold_tree, parse_tree, tree_metrics

__all__ = [
    "Mode",
    "NotReducible",
    "NOT_REDUCIBLE",
    "ReductionOutcome",
    "reduce_once",
    "reduce_iter",
    "total_paths",
    "total_old_path_segments",
]


class Mode(enum.Enum):
    LEAVES = "leaves"
    PATHS = "paths"
    OLD_LEAVES = "old-leaves"
    OLD_PATHS = "old-paths"

    @classmethod
    def parse(cls, value: "Mode | str") -> "Mode":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for mode in cls:
            if mode.value == key:
                return mode
        raise ValueError(f"unknown mode {value!r}; expected one of "
                         + ", ".join(m.value for m in cls))

    @property
    def is_old(self) -> bool:
        return self in (Mode.OLD_LEAVES, Mode.OLD_PATHS)


class NotReducible:
    """Marker returned when a reduction is undefined for the given tree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NOT_REDUCIBLE"

    def __bool__(self) -> bool:
        return False


NOT_REDUCIBLE = NotReducible()


# Each combine step returns (reduced subtree or None if removed, subtree is a path).

def _cut_leaves(node, results):
    if not node:
        return None, True
    kept = [t for t, _ in results if t is not None]
    return PlaneTree(kept), len(results) == 1 and results[0][1]


def _cut_paths(node, results):
    is_path = len(results) == 0 or (len(results) == 1 and results[0][1])
    kept = [t for (t, p) in results if not p]
    return PlaneTree(kept), is_path


def _cut_old_leaves(node, results):
    kept = [t for i, (t, _) in enumerate(results) if not (i == 0 and not node[0])]
    return PlaneTree(kept), False


def _cut_old_paths(node, results):
    is_path = len(results) == 0 or (len(results) == 1 and results[0][1])
    kept = [t for i, (t, p) in enumerate(results) if not (i == 0 and p)]
    return PlaneTree(kept), is_path


_COMBINE = {
    Mode.LEAVES: _cut_leaves,
    Mode.PATHS: _cut_paths,
    Mode.OLD_LEAVES: _cut_old_leaves,
    Mode.OLD_PATHS: _cut_old_paths,
}


def _is_path(tree: PlaneTree) -> bool:
    node = tree
    while node:
        if len(node) > 1:
            return False
        node = node[0]
    return True


def reduce_once(tree: PlaneTree | str, mode: Mode | str) -> PlaneTree | NotReducible:
    """Apply one round of ``mode`` to ``tree``.

    Returns ``NOT_REDUCIBLE`` for the single node under ``LEAVES`` and for
    any path under ``PATHS``; the old-leaf and old-path reductions are
    defined everywhere and fix the single node.
    """
    if isinstance(tree, str):
        tree = parse_tree(tree)
    mode = Mode.parse(mode)
    if mode is Mode.LEAVES and not tree:
        return NOT_REDUCIBLE
    if mode is Mode.PATHS and _is_path(tree):
        return NOT_REDUCIBLE
    reduced, _ = fold_tree(tree, _COMBINE[mode])
    return reduced


@dataclass(frozen=True)
class ReductionOutcome:
    survived: bool
    rounds_applied: int
    final_size: int
    per_round: tuple[TreeMetrics, ...]
    final_tree: PlaneTree | None = None


def reduce_iter(tree: PlaneTree | str, mode: Mode | str, rounds: int) -> ReductionOutcome:
    """Reduce ``rounds`` times, folding a failed round into ``final_size = 0``."""
    if rounds < 0:
        raise ValueError("rounds must be nonnegative")
    if isinstance(tree, str):
        tree = parse_tree(tree)
    mode = Mode.parse(mode)
    snapshots = [tree_metrics(tree)]
    current = tree
    for done in range(rounds):
        nxt = reduce_once(current, mode)
        if nxt is NOT_REDUCIBLE:
            return ReductionOutcome(False, done, 0, tuple(snapshots), None)
        current = nxt
        snapshots.append(tree_metrics(current))
    return ReductionOutcome(True, rounds, snapshots[-1].size, tuple(snapshots), current)


def total_paths(tree: PlaneTree | str) -> int:
    """Number of paths needed to build ``tree``: leaves summed over all path-cut rounds."""
    if isinstance(tree, str):
        tree = parse_tree(tree)
    total = 0
    current = tree
    while True:
        total += tree_metrics(current).leaf_count
        nxt = reduce_once(current, Mode.PATHS)
        if nxt is NOT_REDUCIBLE:
            return total
        current = nxt


def total_old_path_segments(tree: PlaneTree | str) -> int:
    """Old leaves summed over all old-path-cut rounds until only the root is left."""
    if isinstance(tree, str):
        tree = parse_tree(tree)
    total = 0
    current = tree
    while current:
        total += tree_metrics(current).old_leaf_count
        current = reduce_once(current, Mode.OLD_PATHS)
    return total
