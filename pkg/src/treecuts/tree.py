"""Rooted plane trees in balanced-parentheses form.

A node is written as ``(`` followed by the encodings of its children and
``)``, so ``"()"`` is a single node and ``"(()())"`` is a root with two leaf
children.  Trees are immutable; every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, TypeVar

__all__ = [
    "PlaneTree",
    "TreeMetrics",
    "TreeParseError",
    "fold_tree",
    "parse_tree",
    "serialize_tree",
    "tree_from_dyck",
    "tree_metrics",
]

R = TypeVar("R")


class TreeParseError(ValueError):
    """Malformed parentheses string."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class PlaneTree(tuple):
    """An ordered rooted tree; the tuple items are the children, left to right.

    ``PlaneTree()`` is the single node.  Equality and hashing are structural.
    """

    __slots__ = ()

    def __new__(cls, children: Iterable[PlaneTree] = ()):
        return super().__new__(cls, children)

    @property
    def children(self) -> tuple[PlaneTree, ...]:
        return tuple(self)

    @property
    def is_leaf(self) -> bool:
        return len(self) == 0

    @property
    def size(self) -> int:
        return sum(1 for _ in _preorder(self))

    def __repr__(self) -> str:
        return f"PlaneTree({serialize_tree(self)!r})"

    def __str__(self) -> str:
        return serialize_tree(self)


LEAF = PlaneTree()


def _preorder(tree: PlaneTree):
    stack = [tree]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node))


def fold_tree(tree: PlaneTree, combine: Callable[[PlaneTree, list[R]], R]) -> R:
    """Bottom-up fold without recursion.

    ``combine(node, child_results)`` is called once per node, children first.
    Deep trees (paths of thousands of nodes) are fine.
    """
    results: list[R] = []
    stack: list[tuple[PlaneTree, bool]] = [(tree, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            k = len(node)
            if k:
                child_results = results[-k:]
                del results[-k:]
            else:
                child_results = []
            results.append(combine(node, child_results))
        else:
            stack.append((node, True))
            for child in reversed(node):
                stack.append((child, False))
    return results[0]


def parse_tree(text: str) -> PlaneTree:
    """Parse a canonical parentheses string into a :class:`PlaneTree`."""
    if not text:
        raise TreeParseError("empty input", 0)
    if text[0] != "(":
        raise TreeParseError(f"expected '(' but found {text[0]!r}", 0)
    stack: list[list[PlaneTree]] = []
    for pos, ch in enumerate(text):
        if ch == "(":
            stack.append([])
        elif ch == ")":
            if not stack:
                raise TreeParseError("unmatched ')'", pos)
            node = PlaneTree(stack.pop())
            if not stack:
                if pos != len(text) - 1:
                    raise TreeParseError("trailing characters", pos + 1)
                return node
            stack[-1].append(node)
        else:
            raise TreeParseError(f"unexpected character {ch!r}", pos)
    raise TreeParseError("unbalanced input, unexpected end", len(text))


def serialize_tree(tree: PlaneTree) -> str:
    out: list[str] = []
    stack: list[PlaneTree | None] = [tree]
    while stack:
        node = stack.pop()
        if node is None:
            out.append(")")
            continue
        out.append("(")
        stack.append(None)
        stack.extend(reversed(node))
    return "".join(out)


def tree_from_dyck(steps) -> PlaneTree:
    """Decode a Dyck word into the tree whose root encloses it.

    ``steps`` is a sequence of up (``1``, ``"("``, ``True``) and down steps;
    the word ``w`` decodes to the tree written ``"(" + w + ")"``.
    """
    stack: list[list[PlaneTree]] = [[]]
    for s in steps:
        if s == 1 or s == "(" or s is True:
            stack.append([])
        else:
            node = PlaneTree(stack.pop())
            stack[-1].append(node)
    if len(stack) != 1:
        raise ValueError("not a Dyck word")
    return PlaneTree(stack[0])


@dataclass(frozen=True)
class TreeMetrics:
    size: int
    leaf_count: int
    inner_count: int
    old_leaf_count: int
    node_height: int
    is_path: bool
    # nodes that are neither old leaves nor parents of an old leaf
    neither_count: int


def tree_metrics(tree: PlaneTree) -> TreeMetrics:
    """All structural counts in a single traversal.

    An old leaf is a leaf that is the first child of its parent; the root is
    never an old leaf.  ``node_height`` counts levels, so a single node has
    height 1.
    """
    size = leaves = old = neither = 0
    is_path = True
    max_depth = 0
    stack = [(tree, 1, False)]
    while stack:
        node, depth, first_child = stack.pop()
        size += 1
        if depth > max_depth:
            max_depth = depth
        k = len(node)
        old_parent = k > 0 and len(node[0]) == 0
        if k == 0:
            leaves += 1
            if first_child:
                old += 1
        elif k > 1:
            is_path = False
        if not old_parent and not (k == 0 and first_child):
            neither += 1
        for i, child in enumerate(node):
            stack.append((child, depth + 1, i == 0))
    return TreeMetrics(
        size=size,
        leaf_count=leaves,
        inner_count=size - leaves,
        old_leaf_count=old,
        node_height=max_depth,
        is_path=is_path,
        neither_count=neither,
    )
