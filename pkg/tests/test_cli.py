"""The treecuts command line."""

from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from treecuts.cli import run
from treecuts.export import fraction_text, plain, render


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_reduce_figure_tree():
    code, out, _ = call("reduce", "--mode", "paths", "--rounds", "1", "--tree", "(((()))(()())(()))")
    assert code == 0
    assert "final tree: (())" in out and "survived: yes" in out


def test_reduce_json():
    code, out, _ = call("reduce", "--mode", "leaves", "--rounds", "2", "--tree", "(()())",
                        "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["survived"] is False and doc["final_size"] == 0


def test_dist_text():
    code, out, _ = call("dist", "--mode", "leaves", "--size", "3", "--rounds", "1", "--method", "gf")
    assert code == 0 and out == "{1: 1/2, 2: 1/2}\n"


def test_dist_machine_formats_keep_exact_rationals():
    _, out, _ = call("dist", "--mode", "old-paths", "--size", "4", "--rounds", "1", "--format", "json")
    assert json.loads(out)["masses"] == {"1": "1/5", "2": "2/5", "3": "2/5"}
    _, out, _ = call("dist", "--mode", "old-paths", "--size", "4", "--rounds", "1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows == [{"value": "1", "mass": "1/5"}, {"value": "2", "mass": "2/5"},
                    {"value": "3", "mass": "2/5"}]


@pytest.mark.parametrize("mode", ["leaves", "paths", "old-leaves", "old-paths"])
@pytest.mark.parametrize("fmt", ["text", "json", "csv"])
def test_dist_brute_and_gf_byte_identical(mode, fmt):
    sizes = range(1, 13) if fmt == "text" else (1, 5, 9)
    for n in sizes:
        for r in range(6):
            outs = [call("dist", "--mode", mode, "--size", str(n), "--rounds", str(r),
                         "--method", m, "--format", fmt)[1] for m in ("brute", "gf")]
            assert outs[0] == outs[1]


def test_constants_line():
    code, out, _ = call("constants")
    assert code == 0
    assert "alpha = 1.606695" in out


def test_enumerate_and_sample():
    code, out, _ = call("enumerate", "--size", "4")
    assert code == 0 and len(out.split()) == 5
    a = call("sample", "--size", "12", "--count", "4", "--seed", "18446744073709551615")[1]
    b = call("sample", "--size", "12", "--count", "4", "--seed", "18446744073709551615")[1]
    assert a == b and len(a.split()) == 4


def test_moments_methods_agree():
    vals = {}
    for method in ("exact", "closed"):
        _, out, _ = call("moments", "--mode", "old-paths", "--size", "30", "--rounds", "2",
                         "--order", "3", "--method", method, "--format", "json")
        vals[method] = json.loads(out)["moments"]
    assert vals["exact"] == vals["closed"]
    _, out, _ = call("moments", "--mode", "old-leaves", "--size", "50", "--rounds", "1",
                     "--order", "3", "--method", "asymptotic", "--format", "json")
    rows = {r["statistic"]: r for r in json.loads(out)["moments"]}
    assert rows["mean"]["value"] == pytest.approx(37.375)
    assert rows["factorial(3)"]["value"] is None and rows["factorial(3)"]["note"]


def test_totals_csv():
    code, out, _ = call("totals", "--kind", "paths", "--max-size", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["exact"] for r in rows] == ["1/1", "2/1", "14/5"]


def test_clt_old_paths_is_labelled():
    code, out, _ = call("clt", "--mode", "old-paths", "--size", "200", "--rounds", "1",
                        "--samples", "500", "--seed", "4")
    assert code == 0 and "no theorem" in out


def test_clt_zero_rounds_is_an_option_error():
    code, _, err = call("clt", "--mode", "leaves", "--size", "200", "--rounds", "0",
                        "--samples", "500", "--seed", "4")
    assert code == 2 and "sigma" in err


@pytest.mark.parametrize("argv", [
    ["dist", "--mode", "leaves", "--size", "0", "--rounds", "1"],
    ["dist", "--mode", "trees", "--size", "3", "--rounds", "1"],
    ["dist", "--mode", "leaves", "--size", "3", "--rounds", "-1"],
    ["dist", "--mode", "leaves", "--size", "3", "--rounds", "1", "--variant", "old-leaf"],
    ["dist", "--mode", "leaves", "--size", "20", "--rounds", "1", "--method", "brute"],
    ["reduce", "--mode", "leaves", "--rounds", "1", "--tree", "(()"],
    ["sample", "--size", "3", "--count", "1", "--seed", "-5"],
    ["enumerate"],
    [],
])
def test_option_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_verify_quick_passes():
    code, out, _ = call("verify", "--quick", "--only", "Fibonacci")
    assert code == 0 and "1 of 1 checks passed" in out
    assert call("verify", "--only", "no such check")[0] == 2


def test_verify_failure_exits_1(monkeypatch):
    import treecuts.verify as verify

    monkeypatch.setattr(verify, "CHECKS", [("broken", "x", lambda quick: ["mismatch"])])
    code, out, _ = call("verify", "--quick")
    assert code == 1 and "mismatch" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "treecuts", "constants", "--format", "json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)[0]["name"] == "alpha"


def test_export_helpers():
    from fractions import Fraction
    assert fraction_text(Fraction(3, 4)) == "3/4" and fraction_text(2) == "2/1"
    assert plain({"x": Fraction(1, 3), "y": 0.1}) == {"x": "1/3", "y": 0.1}
    assert render([{"a": 1}], "csv") == "a\n1\n"
    with pytest.raises(ValueError):
        render([], "xml")
