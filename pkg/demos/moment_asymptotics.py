"""Exact means and variances against their asymptotic expansions.

For each reduction the exact mean comes from the moment tables (rational
arithmetic, n up to 800) and is compared with the two-term expansion.  The
residual shrinks like 1/n, so n * residual settles to a constant.

Run with ``python demos/moment_asymptotics.py`` (about a minute).
"""

from treecuts import Mode, Variant, comparison_report
from treecuts.analysis import asymptotic_prediction, exact_statistic

SIZES = [100, 200, 400, 800]


def main():
    print("mean residuals (exact - expansion) and n * residual")
    for mode in Mode:
        for r in (1, 2):
            reports = comparison_report(mode, Variant.SIZE, "mean", r, SIZES)
            cells = "  ".join(f"{rep.residual:+.5f} ({rep.residual * rep.n:+7.2f})"
                              for rep in reports)
            print(f"{mode.value:11s} r={r}  {cells}")

    print("\nvariance / n at n = 400 against sigma^2")
    for mode in Mode:
        for r in (1, 2):
            method = "gf" if mode is Mode.OLD_LEAVES else "closed"
            n = 200 if mode is Mode.OLD_LEAVES else 400
            var = exact_statistic(mode, Variant.SIZE, "variance", n, r, method=method)
            sigma2 = asymptotic_prediction(mode, Variant.SIZE, "variance", 1.0, r)
            print(f"{mode.value:11s} r={r}  n={n}  V/n = {float(var) / n:.5f}  sigma^2 = {sigma2:.5f}")


if __name__ == "__main__":
    main()
