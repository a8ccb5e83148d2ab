"""Plane trees: parsing, serialization and structural counts."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from treecuts.ensemble import enumerate_trees
from treecuts.tree import PlaneTree, TreeParseError, parse_tree, serialize_tree, tree_metrics

FIG_TREE = "(((()))(()())(()))"


def trees(max_leaves=12):
    return st.recursive(st.just(PlaneTree()),
                        lambda kids: st.lists(kids, max_size=4).map(PlaneTree),
                        max_leaves=max_leaves)


def test_parse_single_node():
    t = parse_tree("()")
    assert t.size == 1 and t.is_leaf


def test_parse_cherry():
    t = parse_tree("(()())")
    assert t.size == 3
    assert len(t.children) == 2 and all(c.is_leaf for c in t.children)


@pytest.mark.parametrize("text, position", [("(()", 3), ("", 0), ("()()", 2), ("(a)", 1), (")(", 0)])
def test_parse_errors_name_position(text, position):
    with pytest.raises(TreeParseError) as info:
        parse_tree(text)
    assert info.value.position == position


def test_serialize_examples():
    assert serialize_tree(PlaneTree()) == "()"
    assert serialize_tree(PlaneTree([PlaneTree(), PlaneTree()])) == "(()())"
    assert serialize_tree(parse_tree(FIG_TREE)) == FIG_TREE


def test_metrics_single_node():
    m = tree_metrics(parse_tree("()"))
    assert (m.size, m.leaf_count, m.old_leaf_count, m.node_height, m.is_path) == (1, 1, 0, 1, True)


def test_metrics_figure_tree():
    m = tree_metrics(parse_tree(FIG_TREE))
    assert (m.size, m.leaf_count, m.inner_count, m.node_height) == (9, 4, 5, 4)
    assert m.old_leaf_count == 3 and not m.is_path


def test_only_leftmost_leaf_is_old():
    assert tree_metrics(parse_tree("(()())")).old_leaf_count == 1


@given(trees())
def test_round_trip(t):
    text = serialize_tree(t)
    assert parse_tree(text) == t
    assert serialize_tree(parse_tree(text)) == text


@given(trees())
def test_metric_invariants(t):
    m = tree_metrics(t)
    assert m.size == m.leaf_count + m.inner_count
    assert m.old_leaf_count <= m.leaf_count
    assert (m.old_leaf_count == 0) == (m.size == 1)
    assert m.node_height <= m.size
    assert m.is_path == (m.node_height == m.size)
    if m.is_path:
        assert m.leaf_count == 1
    assert m.size == 2 * m.old_leaf_count + m.neither_count


def test_half_of_all_nodes_are_leaves():
    for n in range(2, 10):
        ts = list(enumerate_trees(n))
        assert 2 * sum(tree_metrics(t).leaf_count for t in ts) == n * len(ts)
