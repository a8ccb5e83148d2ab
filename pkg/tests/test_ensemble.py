"""Enumeration and uniform sampling."""

from __future__ import annotations

from collections import Counter

import numpy as np
import pytest

from treecuts.combinatorics import catalan
from treecuts.ensemble import (
    EnumerationCapError,
    enumerate_trees,
    enumerate_words,
    final_sizes_from_words,
    random_state,
    sample_final_sizes,
    sample_tree,
    sample_words,
)
from treecuts.reduction import Mode, reduce_iter
from treecuts.tree import parse_tree


def test_enumeration_examples():
    assert [str(t) for t in enumerate_trees(1)] == ["()"]
    assert len(list(enumerate_trees(4))) == 5
    assert [str(t) for t in enumerate_trees(3)] == ["((()))", "(()())"]


def test_enumeration_size_12():
    words = list(enumerate_words(12))
    assert len(words) == 58786 == catalan(11)
    assert len(set(words)) == len(words)
    assert words == sorted(words)


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError):
        next(enumerate_words(16))
    assert len(list(enumerate_words(5, cap=5))) == 14


def test_single_node_sample():
    state = random_state(1)
    assert all(str(sample_tree(1, state)) == "()" for _ in range(5))


def test_samples_are_dyck_words():
    words = sample_words(40, 500, random_state(9))
    heights = np.cumsum(words, axis=1)
    assert (heights >= 0).all() and (heights[:, -1] == 0).all()


def test_size_three_frequencies():
    words = sample_words(3, 100_000, random_state(33))
    share = float((words[:, 1] == 1).mean())  # "(())" inside the root is the path
    assert 0.49 <= share <= 0.51


def test_seed_determinism():
    a = sample_final_sizes(Mode.LEAVES, 100, 2, 3000, seed=77, batch=700)
    b = sample_final_sizes(Mode.LEAVES, 100, 2, 3000, seed=77, batch=3000)
    assert (a == b).all()
    with pytest.raises(ValueError):
        random_state(-1)


@pytest.mark.parametrize("mode", list(Mode))
def test_fast_sizes_equal_reduction(mode):
    trees = list(enumerate_trees(9))
    words = np.array([[1 if ch == "(" else -1 for ch in str(t)[1:-1]] for t in trees], dtype=np.int8)
    for r in range(6):
        fast = final_sizes_from_words(words, mode, r)
        slow = [reduce_iter(t, mode, r).final_size for t in trees]
        assert fast.tolist() == slow


def test_sampled_trees_parse():
    state = random_state(5)
    for _ in range(20):
        t = sample_tree(25, state)
        assert parse_tree(str(t)).size == 25


def test_small_size_distribution_roughly_uniform():
    words = sample_words(5, 28_000, random_state(123))
    counts = Counter(map(bytes, words))
    assert len(counts) == catalan(4)
    assert min(counts.values()) > 1700 and max(counts.values()) < 2300
