"""Exhaustive enumeration and uniform sampling of plane trees.

Trees of size n correspond to Dyck words of length 2(n-1): the canonical
string of a tree is "(" + word + ")".

Sampling uses the cycle lemma.  A uniformly shuffled sequence of n-1 up
steps and n down steps has total -1, and exactly one of its 2n-1 cyclic
rotations keeps every proper prefix sum nonnegative (the one starting just
after the first minimum of the prefix sums).  Dropping that rotation's final
down step leaves a uniformly distributed Dyck word.

For Monte-Carlo work the reduced size is computed without building trees:
each node gets the round in which it is removed, computed bottom-up from its
children and its left sibling in one pass over the word (see
:func:`removal_rounds`).
"""

from __future__ import annotations

from typing import Iterator

import numba
import numpy as np

from .combinatorics import catalan
from .reduction import Mode
from .tree import PlaneTree, parse_tree, tree_from_dyck

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "EnumerationCapError",
    "enumerate_words",
    "enumerate_trees",
    "random_state",
    "sample_words",
    "sample_tree",
    "sample_final_sizes",
    "final_sizes_from_words",
    "removal_rounds",
    "word_codes",
]

DEFAULT_ENUMERATION_CAP = 15

_MODE_CODE = {Mode.LEAVES: 0, Mode.PATHS: 1, Mode.OLD_LEAVES: 2, Mode.OLD_PATHS: 3}


class EnumerationCapError(ValueError):
    """Requested size exceeds the enumeration cap."""


def enumerate_words(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[str]:
    """Dyck words of semilength n-1 in lexicographic order, '(' before ')'."""
    if n < 1:
        raise ValueError("size must be >= 1")
    if n > cap:
        raise EnumerationCapError(
            f"size {n} exceeds the enumeration cap {cap} ({catalan(n - 1)} trees)")
    m = n - 1
    w = ["("] * m + [")"] * m
    while True:
        yield "".join(w)
        # rightmost '(' that can become ')' while the prefix stays balanced
        bal = 0
        pivot = -1
        prefix_bal = []
        for ch in w:
            prefix_bal.append(bal)
            bal += 1 if ch == "(" else -1
        for i in range(2 * m - 1, -1, -1):
            if w[i] == "(" and prefix_bal[i] >= 1:
                pivot = i
                break
        if pivot < 0:
            return
        opens = w[:pivot].count("(")
        rest = m - opens  # opens still to place after the pivot, not counting it
        w[pivot] = ")"
        tail_len = 2 * m - pivot - 1
        w[pivot + 1:] = ["("] * rest + [")"] * (tail_len - rest)


def enumerate_trees(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[PlaneTree]:
    """Every plane tree with n nodes exactly once, ordered by canonical string."""
    for w in enumerate_words(n, cap):
        yield parse_tree("(" + w + ")")


def random_state(seed: int) -> np.random.Generator:
    """Deterministic generator (PCG64) from a 64-bit seed."""
    if not 0 <= int(seed) < 2 ** 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return np.random.default_rng(int(seed))


@numba.njit(cache=True)
def _cycle_lemma_words(rng, count, m):
    length = 2 * m + 1
    out = np.empty((count, 2 * m), dtype=np.int8)
    steps = np.empty(length, dtype=np.int8)
    for i in range(count):
        for p in range(length):
            steps[p] = 1 if p < m else -1
        # Fisher-Yates; the float-to-index map has relative bias below 1e-12 for n < 10^4
        for p in range(length - 1, 0, -1):
            j = int(rng.random() * (p + 1))
            tmp = steps[p]
            steps[p] = steps[j]
            steps[j] = tmp
        height = 0
        lowest = 0
        arg = 0
        for p in range(length):
            height += steps[p]
            if height < lowest:
                lowest = height
                arg = p
        start = arg + 1
        for p in range(2 * m):
            out[i, p] = steps[(start + p) % length]
    return out


def sample_words(n: int, count: int, state: np.random.Generator) -> np.ndarray:
    """``count`` independent uniform Dyck words as a (count, 2n-2) int8 array of +1/-1."""
    if n < 1:
        raise ValueError("size must be >= 1")
    m = n - 1
    if m == 0:
        return np.zeros((count, 0), dtype=np.int8)
    return _cycle_lemma_words(state, int(count), m)


def sample_tree(n: int, state: np.random.Generator) -> PlaneTree:
    """One uniformly random plane tree with n nodes."""
    word = sample_words(n, 1, state)[0]
    return tree_from_dyck(int(s) == 1 for s in word)


def word_codes(words: np.ndarray) -> np.ndarray:
    """Integer code of each word (up steps as 1-bits, first step most significant)."""
    bits = (words == 1).astype(np.int64)
    weights = 1 << np.arange(bits.shape[1] - 1, -1, -1, dtype=np.int64)
    return bits @ weights


# Per open node the scan keeps ``top[d]`` (largest child round so far for the
# leaf and path cuts, last child round for the old cuts) and ``kids[d]``:
# 0 = no child yet, 1 = children seen, 2 = the largest child round is tied.

@numba.njit(cache=True)
def _round_of(mode, agg, kids, left):
    if mode == 0:
        return agg + 1
    if mode == 1:
        if kids == 0:
            return 1
        return agg + 1 if kids == 2 else agg
    if mode == 2:
        return 1 + max(agg, left)
    a = agg if kids > 0 else 1
    return max(a, 1 + left)


@numba.njit(cache=True)
def _absorb(mode, top, kids, depth, rv):
    if mode <= 1:
        if kids[depth] == 0 or rv > top[depth]:
            top[depth] = rv
            kids[depth] = 1
        elif rv == top[depth]:
            kids[depth] = 2
    else:
        # removal rounds of old-cut siblings increase left to right
        top[depth] = rv
        kids[depth] = 1


@numba.njit(cache=True)
def _rounds_kernel(word, mode):
    """Removal round of every non-root node (in order of closing) and of the root."""
    m = word.shape[0] // 2
    top = np.zeros(m + 1, dtype=np.int64)
    kids = np.zeros(m + 1, dtype=np.int64)
    out = np.zeros(m + 1, dtype=np.int64)
    depth = 0
    k = 0
    for p in range(2 * m):
        if word[p] == 1:
            depth += 1
            top[depth] = 0
            kids[depth] = 0
        else:
            rv = _round_of(mode, top[depth], kids[depth], top[depth - 1])
            out[k] = rv
            k += 1
            depth -= 1
            _absorb(mode, top, kids, depth, rv)
    out[m] = _round_of(mode, top[0], kids[0], 0)
    return out


@numba.njit(cache=True)
def _final_sizes_kernel(words, mode, r):
    count = words.shape[0]
    m = words.shape[1] // 2
    top = np.zeros(m + 1, dtype=np.int64)
    kids = np.zeros(m + 1, dtype=np.int64)
    res = np.zeros(count, dtype=np.int64)
    for i in range(count):
        depth = 0
        survivors = 1
        top[0] = 0
        kids[0] = 0
        for p in range(2 * m):
            if words[i, p] == 1:
                depth += 1
                top[depth] = 0
                kids[depth] = 0
            else:
                rv = _round_of(mode, top[depth], kids[depth], top[depth - 1])
                if rv > r:
                    survivors += 1
                depth -= 1
                _absorb(mode, top, kids, depth, rv)
        root = _round_of(mode, top[0], kids[0], 0)
        res[i] = 0 if (mode <= 1 and root <= r) else survivors
    return res


def removal_rounds(tree: PlaneTree | str, mode: Mode | str) -> tuple[list[int], int]:
    """Removal round of each non-root node (postorder) and of the root.

    A node with round R disappears during round R, so after r rounds exactly
    the nodes with R > r remain.  For the old reductions the root is never
    removed and its value is irrelevant.  For the leaf and path reductions
    the tree survives r rounds iff the root's value exceeds r.
    """
    mode = Mode.parse(mode)
    text = tree if isinstance(tree, str) else str(tree)
    inner = text[1:-1]
    word = np.array([1 if ch == "(" else -1 for ch in inner], dtype=np.int8)
    out = _rounds_kernel(word, _MODE_CODE[mode])
    return [int(x) for x in out[:-1]], int(out[-1])


def final_sizes_from_words(words: np.ndarray, mode: Mode | str, r: int) -> np.ndarray:
    """Size after r rounds for each word-encoded tree (0 when it does not survive)."""
    mode = Mode.parse(mode)
    return _final_sizes_kernel(np.ascontiguousarray(words, dtype=np.int8), _MODE_CODE[mode], int(r))


def sample_final_sizes(mode: Mode | str, n: int, r: int, count: int, seed: int,
                       batch: int = 10_000) -> np.ndarray:
    """Reduced sizes of ``count`` uniform random trees of size n, reproducible per seed."""
    state = random_state(seed)
    out = np.empty(count, dtype=np.int64)
    done = 0
    while done < count:
        k = min(batch, count - done)
        words = sample_words(n, k, state)
        out[done:done + k] = final_sizes_from_words(words, mode, r)
        done += k
    return out
