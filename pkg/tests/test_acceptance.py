"""The twelve acceptance criteria, each at its stated tolerance.

Each test prints one ``ACCEPTANCE k: PASS|FAIL`` line (repeated in the
terminal summary) and then asserts.  Three criteria cannot hold at the
stated sizes and fail on purpose; see the notes in the individual tests.
"""

from __future__ import annotations

import time
from collections import Counter
from fractions import Fraction

import numpy as np
from scipy import stats

from treecuts.analysis import (
    asymptotic_prediction,
    brute_distribution,
    clt_experiment,
    comparison_report,
    exact_statistic,
    gf_distribution,
    paths_rank_distribution,
    totals_report,
)
from treecuts.combinatorics import IntPolynomial
from treecuts.ensemble import enumerate_trees, enumerate_words, random_state, sample_words, word_codes
from treecuts.gf import (
    Variant,
    allowed_variants,
    explicit_expectation,
    gf_table,
    moment_table,
    old_path_segments_expectation_table,
    total_paths_expectation_table,
)
from treecuts.reduction import Mode, reduce_iter, total_old_path_segments, total_paths
from treecuts.verify import run_checks

# Seeds are fixed once and documented here; they were not tuned.
CLT_SEEDS = {Mode.LEAVES: 20_001, Mode.PATHS: 20_002, Mode.OLD_LEAVES: 20_003}
CHI_SQUARE_SEED = 6_420_000


def _poly(*coeffs):
    return IntPolynomial(coeffs)


def test_1_golden_gf_rows(acceptance):
    start = time.perf_counter()
    v = _poly(0, 1)
    printed = {
        1: {2: v, 3: _poly(0, 1, 1), 4: _poly(0, 1, 3, 1), 5: _poly(0, 1, 6, 6, 1)},
        2: {3: v, 4: _poly(0, 3, 1), 5: _poly(0, 7, 5, 1), 6: _poly(0, 15, 18, 7, 1)},
        3: {4: v, 5: _poly(0, 5, 1), 6: _poly(0, 18, 7, 1), 7: _poly(0, 57, 33, 9, 1)},
    }
    bad = []
    for r, rows in printed.items():
        table = gf_table(Mode.LEAVES, Variant.SIZE, r, r + 4)
        for n in range(1, r + 5):
            want = rows.get(n, IntPolynomial())
            if table.row(n) != want:
                bad.append(f"G_{r} z^{n}: {table.row(n)} != {want}")
    seconds = time.perf_counter() - start
    ok = not bad and seconds < 1
    acceptance(1, ok, f"G_1..G_3 rows exact ({len(bad)} mismatches, {seconds:.2f}s)")
    assert not bad
    assert seconds < 1


def test_2_gf_equals_brute(acceptance):
    start = time.perf_counter()
    bad = []
    cells = 0
    for mode in Mode:
        for variant in allowed_variants(mode):
            for r in range(6):
                for n in range(1, 13):
                    cells += 1
                    a = brute_distribution(mode, n, r, variant)
                    b = gf_distribution(mode, n, r, variant)
                    if a != b or sum(a.masses) != 1:
                        bad.append((mode.value, variant.value, n, r))
    seconds = time.perf_counter() - start
    acceptance(2, not bad, f"{cells} (mode, variant, n, r) cells, {len(bad)} mismatches, "
                           f"{seconds:.1f}s")
    assert not bad, bad[:5]


def test_3_explicit_expectations(acceptance):
    bad = []
    for mode in (Mode.LEAVES, Mode.OLD_PATHS):
        for r in range(9):
            table = moment_table(mode, Variant.SIZE, 1, r, 60)
            for n in range(2, 61):
                if explicit_expectation(mode, n, r) != table[n]:
                    bad.append(("table", mode.value, n, r))
            for n in range(2, 13):
                brute = brute_distribution(mode, n, r).mean() if r <= 5 else None
                if brute is None:
                    trees = list(enumerate_trees(n))
                    brute = Fraction(sum(reduce_iter(t, mode, r).final_size for t in trees),
                                     len(trees))
                if explicit_expectation(mode, n, r) != brute:
                    bad.append(("brute", mode.value, n, r))
    acceptance(3, not bad, f"binomial sums vs tables (n <= 60) and brute means (n <= 12), "
                           f"r <= 8: {len(bad)} mismatches")
    assert not bad, bad[:5]


def test_4_path_leaf_correspondence(acceptance):
    bad = []
    for r in range(3):
        R = 2 ** (r + 1) - 2
        for n in range(1, 41):
            leaf = gf_distribution(Mode.LEAVES, n, R)
            if paths_rank_distribution(n, r).masses != leaf.masses:
                bad.append(("rank", n, r))
            if gf_distribution(Mode.PATHS, n, r).masses != leaf.masses:
                bad.append(("gf", n, r))
            if n <= 12 and brute_distribution(Mode.PATHS, n, r).masses != leaf.masses:
                bad.append(("brute", n, r))
    acceptance(4, not bad, f"path law at r = law of leaf cuts at 2^(r+1)-2, n <= 40: "
                           f"{len(bad)} mismatches")
    assert not bad, bad[:5]


def test_5_identity_suite(acceptance):
    names = ["functional equations", "Fibonacci identities", "Narayana identities",
             "power-series identities", "leaf and old-leaf censuses"]
    results = [res for name in names for res in run_checks(quick=False, only=name)]
    failed = [res.name for res in results if not res.ok]
    acceptance(5, len(results) == len(names) and not failed,
               f"{len(results)} identity groups, failed: {failed or 'none'}")
    assert len(results) == len(names)
    assert not failed


def test_6_mean_decay(acceptance):
    # Known failure: the path cut at r = 3 acts like 14 leaf cuts and its
    # O(1/n) remainder is about -55/n, so |residual(400)| = 0.161 > 0.05.
    cells = []
    for mode in Mode:
        for r in (1, 2, 3):
            res200, res400 = comparison_report(mode, Variant.SIZE, "mean", r, [200, 400])
            decays = abs(res400.residual) <= 0.9 * abs(res200.residual)
            small = abs(res400.residual) <= 0.05
            cells.append((mode.value, r, res200.residual, res400.residual, decays and small))
    failed = [f"{m} r={r} ({a:+.4f} -> {b:+.4f})" for m, r, a, b, ok in cells if not ok]
    acceptance(6, not failed, f"{len(cells) - len(failed)}/{len(cells)} cells; "
                              f"failing: {', '.join(failed) or 'none'}")
    assert not failed


def test_7_variance_asymptotics(acceptance):
    cells = [(Mode.LEAVES, r, 400, "closed") for r in (1, 2, 3)]
    cells += [(Mode.PATHS, r, 400, "closed") for r in (1, 2)]
    cells += [(Mode.OLD_PATHS, r, 400, "closed") for r in (1, 2, 3)]
    cells += [(Mode.OLD_LEAVES, r, 200, "gf") for r in (1, 2, 3)]
    worst = 0.0
    failed = []
    for mode, r, n, method in cells:
        var = exact_statistic(mode, Variant.SIZE, "variance", n, r, method=method)
        sigma2 = asymptotic_prediction(mode, Variant.SIZE, "variance", 1.0, r)
        gap = abs(float(var) / n - sigma2)
        worst = max(worst, gap)
        if gap > 0.02:
            failed.append(f"{mode.value} r={r}: {gap:.4f}")
    acceptance(7, not failed, f"{len(cells)} cells, largest |V/n - sigma^2| = {worst:.4f}")
    assert not failed


def test_8_total_paths(acceptance):
    # Known failure: the fluctuation delta has amplitude about 0.0485, not the
    # 0.02 budgeted, so the residual reaches 0.082 at n = 128.
    # tests/test_analysis.py checks the residual after subtracting delta.
    reports = totals_report("paths", [64, 128, 256, 512])
    residuals = [rep.residual for rep in reports]
    ok = all(abs(x) <= 0.05 for x in residuals)
    acceptance(8, ok, "E P_n - expansion at n = 64..512: "
               + ", ".join(f"{x:+.4f}" for x in residuals) + " (bound 0.05)")
    assert ok


def test_9_old_path_segments(acceptance):
    # Known failure of the second part: the residual has a nonzero n^-2 term
    # (about -0.01893), so the n^2-scaled residual does not shrink.
    a, b = totals_report("old-path-segments", [100, 200])
    bound_ok = all(abs(rep.residual) <= 50 / rep.n ** 2 for rep in (a, b))
    ratio = b.residual_scaled / a.residual_scaled
    ratio_ok = 0.2 <= ratio <= 0.8
    acceptance(9, bound_ok and ratio_ok,
               f"n^2 residual {a.residual_scaled:+.6f}, {b.residual_scaled:+.6f} "
               f"(bound 50: {'ok' if bound_ok else 'violated'}); ratio {ratio:.4f} "
               f"(need [0.2, 0.8])")
    assert bound_ok
    assert ratio_ok


def test_10_clt_suite(acceptance):
    cells = [(Mode.LEAVES, 2), (Mode.PATHS, 1), (Mode.OLD_LEAVES, 1)]
    lines = []
    failed = []
    for mode, r in cells:
        start = time.perf_counter()
        rep = clt_experiment(mode, 2000, r, 200_000, CLT_SEEDS[mode])
        seconds = time.perf_counter() - start
        ok = (abs(rep.standardized_mean) <= 0.03 and 0.93 <= rep.standardized_variance <= 1.07
              and rep.ks_distance <= 0.05 and seconds < 120)
        lines.append(f"{mode.value} r={r}: mean {rep.standardized_mean:+.4f}, "
                     f"var {rep.standardized_variance:.4f}, KS {rep.ks_distance:.4f}, "
                     f"{seconds:.0f}s")
        if not ok:
            failed.append(mode.value)
    acceptance(10, not failed, "; ".join(lines))
    assert not failed


def test_11_sampler_uniformity(acceptance):
    n, count = 6, 420_000
    shapes = list(enumerate_words(n))
    codes = {int(word_codes(np.array([[1 if ch == "(" else -1 for ch in w]], dtype=np.int8))[0]): w
             for w in shapes}
    drawn = word_codes(sample_words(n, count, random_state(CHI_SQUARE_SEED)))
    counts = Counter(int(c) for c in drawn)
    assert set(counts) <= set(codes)
    observed = np.array([counts.get(c, 0) for c in codes], dtype=float)
    expected = count / len(shapes)
    chi2 = float(((observed - expected) ** 2 / expected).sum())
    threshold = stats.chi2.ppf(0.999, len(shapes) - 1)
    ok = chi2 <= 74.7
    acceptance(11, ok, f"chi-square {chi2:.2f} over {len(shapes)} shapes "
                       f"(limit 74.7, exact 0.001 quantile {threshold:.2f}), seed {CHI_SQUARE_SEED}")
    assert ok


def test_12_split_identity_and_totals(acceptance):
    bad = []
    p_table = total_paths_expectation_table(12)
    s_table = old_path_segments_expectation_table(12)
    for n in range(1, 13):
        trees = list(enumerate_trees(n))
        for t in trees:
            for snap in reduce_iter(t, Mode.OLD_PATHS, 5).per_round:
                if snap.size != 2 * snap.old_leaf_count + snap.neither_count:
                    bad.append(("split", str(t)))
        if n >= 2:
            if Fraction(sum(map(total_paths, trees)), len(trees)) != p_table[n]:
                bad.append(("P", n))
            if Fraction(sum(map(total_old_path_segments, trees)), len(trees)) != s_table[n]:
                bad.append(("S", n))
    acceptance(12, not bad, f"split identity on every tree n <= 12, r <= 5; "
                            f"P and S tables vs brute means: {len(bad)} mismatches")
    assert not bad, bad[:5]
