"""Every cross-check in the verify suite, at quick sizes."""

from __future__ import annotations

import pytest

from treecuts.verify import CHECKS, run_checks, series_identity_sides
from treecuts.series import USeries


@pytest.mark.parametrize("name, module, fn", CHECKS, ids=[c[0] for c in CHECKS])
def test_check_quick(name, module, fn):
    assert fn(True) == []


def test_run_checks_filters_and_reports():
    results = run_checks(quick=True, only="Narayana")
    assert [r.name for r in results] == ["Narayana identities"]
    assert results[0].ok and results[0].seconds >= 0


@pytest.mark.parametrize("which", ["leaves-1", "leaves-2", "old-leaves", "old-rest"])
def test_series_identities_are_not_vacuous(which):
    lhs, rhs = series_identity_sides(which, 2, 8)
    assert rhs != USeries.zero(8)
    assert lhs == rhs
