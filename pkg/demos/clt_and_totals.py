"""Central limit behaviour of reduced sizes, and the expected totals.

The sampled sizes are standardized with the theorem's mu and sigma^2, not
with sample estimates.  The second part shows that the residual of E P_n
against its deterministic expansion is the periodic fluctuation delta(log_4 n)
plus a remainder of order n^(-1/2).

Run with ``python demos/clt_and_totals.py``.
"""

import math

import numpy as np

from treecuts import Mode, clt_experiment, totals_report
from treecuts.analysis import clt_parameters, fluctuation_delta
from treecuts.ensemble import sample_final_sizes


def histogram(z, bins=np.linspace(-3, 3, 13)):
    counts, edges = np.histogram(z, bins=bins)
    scale = 50 / counts.max()
    for c, lo in zip(counts, edges):
        print(f"  {lo:+.1f} {'#' * int(c * scale)}")


def main():
    n, r = 2000, 2
    mu, sigma2 = clt_parameters(Mode.LEAVES, r)
    sizes = sample_final_sizes(Mode.LEAVES, n, r, 50_000, seed=2024)
    z = (sizes - mu * n) / math.sqrt(sigma2 * n)
    print(f"leaf cuts, n={n}, r={r}: standardized sizes of 50000 random trees")
    histogram(z)

    for mode, rr in ((Mode.LEAVES, 2), (Mode.PATHS, 1), (Mode.OLD_LEAVES, 1)):
        rep = clt_experiment(mode, n, rr, 50_000, seed=7)
        print(f"{mode.value:11s} r={rr}: mean {rep.standardized_mean:+.4f}  "
              f"var {rep.standardized_variance:.4f}  KS {rep.ks_distance:.4f}")

    print("\nE P_n - expansion, and what is left after subtracting delta(log_4 n)")
    for rep in totals_report("paths", [64, 128, 256, 512, 1024]):
        d = fluctuation_delta(math.log(rep.n, 4))
        print(f"  n={rep.n:5d}  residual {rep.residual:+.4f}  delta {d:+.4f}  "
              f"left {rep.residual - d:+.4f}  x sqrt(n) {(rep.residual - d) * math.sqrt(rep.n):.3f}")

    print("\nE S_n - expansion, scaled by n^2")
    for rep in totals_report("old-path-segments", [50, 100, 200, 400]):
        print(f"  n={rep.n:4d}  n^2 * residual {rep.residual_scaled:+.6f}")


if __name__ == "__main__":
    main()
