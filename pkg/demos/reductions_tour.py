"""A tour of the four reductions on one tree, and their exact laws for n = 8.

Run with ``python demos/reductions_tour.py``.
"""

from treecuts import Mode, gf_distribution, parse_tree, reduce_iter

TREE = "(((()))(()())(()))"


def main():
    tree = parse_tree(TREE)
    print(f"tree {TREE} has {tree.size} nodes\n")
    for mode in Mode:
        out = reduce_iter(tree, mode, 4)
        sizes = " -> ".join(str(m.size) for m in out.per_round)
        status = "survives" if out.survived else f"gone after {out.rounds_applied + 1} rounds"
        print(f"{mode.value:11s} sizes {sizes:20s} {status}")

    print("\nexact law of the size after two rounds, n = 8 (429 trees):")
    for mode in Mode:
        dist = gf_distribution(mode, 8, 2)
        masses = ", ".join(f"{k}: {p}" for k, p in dist.support().items())
        print(f"{mode.value:11s} mean {float(dist.mean()):.4f}  {{{masses}}}")

    # path cuts behave like 2^(r+1) - 2 leaf cuts in distribution, though not tree by tree
    a = gf_distribution(Mode.PATHS, 12, 2)
    b = gf_distribution(Mode.LEAVES, 12, 6)
    print(f"\npaths r=2 and leaves r=6 give the same law at n = 12: {a.masses == b.masses}")


if __name__ == "__main__":
    main()
