"""Command-line front end.

    treecuts enumerate --size 4
    treecuts reduce --mode paths --rounds 1 --tree "(((()))(()())(()))"
    treecuts dist --mode leaves --size 3 --rounds 1 --method gf
    treecuts moments --mode old-paths --size 100 --rounds 2 --order 2
    treecuts totals --kind old-path-segments --max-size 20
    treecuts sample --size 10 --count 5 --seed 7
    treecuts clt --mode leaves --size 2000 --rounds 2 --samples 20000 --seed 1
    treecuts constants
    treecuts verify --quick

Every command takes ``--format text|json|csv``.  Exit codes: 0 on success,
1 when ``verify`` finds a mismatch, 2 on invalid options.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .analysis import (
    CONSTANTS,
    UnsupportedStatistic,
    asymptotic_prediction,
    brute_distribution,
    c0_paths,
    clt_experiment,
    constant_alpha,
    exact_statistic,
    gf_distribution,
    total_asymptotics,
)
from .ensemble import DEFAULT_ENUMERATION_CAP, enumerate_words, random_state, sample_tree
from .export import FORMATS, fraction_text, render
from .gf import (
    Variant,
    allowed_variants,
    old_path_segments_expectation_table,
    total_paths_expectation_table,
)
from .reduction import Mode, reduce_iter
from .tree import TreeParseError, parse_tree
from .verify import run_checks

__all__ = ["main", "run", "build_parser"]

MODES = tuple(m.value for m in Mode)
VARIANTS = tuple(v.value for v in Variant)


class OptionError(ValueError):
    """Invalid combination of otherwise well-formed options (exit code 2)."""


def _int_at_least(low: int, what: str):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{what} must be an integer, got {text!r}")
        if value < low:
            raise argparse.ArgumentTypeError(f"{what} must be >= {low}, got {value}")
        return value
    return convert


def _seed(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be a decimal integer, got {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


_size = _int_at_least(1, "size")
_rounds = _int_at_least(0, "rounds")
_positive = _int_at_least(1, "value")


# --------------------------------------------------------------------------
# commands; each returns (exit code, rendered output)

def _cmd_enumerate(a) -> tuple[int, str]:
    words = ["(" + w + ")" for w in enumerate_words(a.size, a.cap)]
    records = [{"tree": w} for w in words]
    return 0, render(records, a.format, document=words,
                     text="".join(w + "\n" for w in words))


def _cmd_reduce(a) -> tuple[int, str]:
    try:
        tree = parse_tree(a.tree)
    except TreeParseError as exc:
        raise OptionError(f"--tree: {exc}")
    out = reduce_iter(tree, a.mode, a.rounds)
    final = str(out.final_tree) if out.final_tree is not None else None
    summary = {
        "mode": a.mode, "rounds": a.rounds, "input": str(tree), "survived": out.survived,
        "rounds_applied": out.rounds_applied, "final_size": out.final_size, "final_tree": final,
    }
    per_round = [{"round": i, **{k: v for k, v in vars(m).items()}}
                 for i, m in enumerate(out.per_round)]
    lines = [f"final tree: {final if final is not None else '(none)'}",
             f"survived: {'yes' if out.survived else 'no'}",
             f"rounds applied: {out.rounds_applied} of {a.rounds}",
             f"final size: {out.final_size}",
             "",
             render(per_round, "text")]
    return 0, render(per_round, a.format, document={**summary, "per_round": per_round},
                     text="\n".join(lines))


def _cmd_dist(a) -> tuple[int, str]:
    if a.method == "brute":
        if a.size > a.cap:
            raise OptionError(f"--size {a.size} exceeds the enumeration cap {a.cap}")
        dist = brute_distribution(a.mode, a.size, a.rounds, a.variant, cap=a.cap)
    else:
        dist = gf_distribution(a.mode, a.size, a.rounds, a.variant)
    support = dist.support()
    records = [{"value": k, "mass": p} for k, p in support.items()]
    document = {"mode": a.mode, "variant": a.variant, "n": a.size, "rounds": a.rounds,
                "masses": {str(k): fraction_text(p) for k, p in support.items()}}
    text = "{" + ", ".join(f"{k}: {p}" for k, p in support.items()) + "}\n"
    return 0, render(records, a.format, document=document, text=text)


def _cmd_moments(a) -> tuple[int, str]:
    n, r, d = a.size, a.rounds, a.order
    wanted = [("mean", 1), ("variance", 1), ("factorial", d)]
    records = []
    for statistic, dd in wanted:
        label = statistic if statistic != "factorial" else f"factorial({dd})"
        if a.method == "asymptotic":
            try:
                value = asymptotic_prediction(a.mode, a.variant, statistic, n, r, dd)
            except UnsupportedStatistic as exc:
                value = None
                note = str(exc)
            else:
                note = ""
        else:
            if n == 1:
                dist = gf_distribution(a.mode, 1, r, a.variant)
                value = {"mean": dist.mean(), "variance": dist.variance()}.get(
                    statistic, dist.factorial_moment(dd))
            else:
                method = "gf" if a.method == "exact" else "closed"
                value = exact_statistic(a.mode, a.variant, statistic, n, r, dd, method)
            note = ""
        records.append({"statistic": label, "value": value,
                        "float": None if value is None else float(value), "note": note})
    document = {"mode": a.mode, "variant": a.variant, "n": n, "rounds": r,
                "method": a.method, "moments": records}
    return 0, render(records, a.format, document=document)


def _cmd_totals(a) -> tuple[int, str]:
    order = max(a.max_size, 2)
    if a.kind == "paths":
        table = total_paths_expectation_table(order)
    else:
        table = old_path_segments_expectation_table(order)
    records = []
    for n in range(2, a.max_size + 1):
        exact = table[n]
        pred = total_asymptotics(a.kind, n)
        records.append({"n": n, "exact": exact, "float": float(exact), "expansion": pred,
                        "residual": float(exact - Fraction(pred))})
    return 0, render(records, a.format)


def _cmd_sample(a) -> tuple[int, str]:
    state = random_state(a.seed)
    records = []
    for i in range(a.count):
        tree = sample_tree(a.size, state)
        row = {"index": i, "tree": str(tree)}
        if a.mode is not None:
            row["final_size"] = reduce_iter(tree, a.mode, a.rounds).final_size
        records.append(row)
    if a.mode is None:
        text = "".join(row["tree"] + "\n" for row in records)
    else:
        text = None
    return 0, render(records, a.format, text=text)


def _cmd_clt(a) -> tuple[int, str]:
    exploratory = a.mode == Mode.OLD_PATHS.value
    try:
        rep = clt_experiment(a.mode, a.size, a.rounds, a.samples, a.seed,
                             exploratory=exploratory)
    except ValueError as exc:
        raise OptionError(str(exc))
    record = {"mode": rep.mode, "n": rep.n, "rounds": rep.rounds, "samples": rep.samples,
              "seed": rep.seed, "mu": rep.mu, "sigma2": rep.sigma2,
              "standardized_mean": rep.standardized_mean,
              "standardized_variance": rep.standardized_variance,
              "ks_distance": rep.ks_distance,
              "theorem": "yes" if rep.theorem else "no theorem"}
    text = "".join(f"{k} = {v!r}\n" if isinstance(v, float) else f"{k} = {v}\n"
                   for k, v in record.items())
    if not rep.theorem:
        text = "exploratory run, no theorem: normality of this statistic is not established\n" + text
    return 0, render([record], a.format, document=record, text=text)


def _cmd_constants(a) -> tuple[int, str]:
    records = [
        {"name": "alpha", "value": str(constant_alpha(30))},
        {"name": "alpha_minus_1", "value": str(constant_alpha(30) - 1)},
        {"name": "gamma", "value": str(CONSTANTS["gamma"])},
        {"name": "zeta_prime_minus_1", "value": str(CONSTANTS["zeta_prime_minus_1"])},
        {"name": "pi_squared", "value": str(CONSTANTS["pi_squared"])},
        {"name": "log2", "value": str(CONSTANTS["log2"])},
        {"name": "c0_paths", "value": repr(c0_paths())},
        {"name": "old_segment_slope", "value": repr(float(CONSTANTS["pi_squared"]) / 6 - 1)},
    ]
    text = "".join(f"{row['name']} = {row['value']}\n" for row in records)
    return 0, render(records, a.format, text=text)


def _cmd_verify(a) -> tuple[int, str]:
    results = run_checks(quick=a.quick, only=a.only)
    if not results:
        raise OptionError(f"no check matches {a.only!r}")
    records = [{"check": c.name, "module": c.module, "status": "ok" if c.ok else "FAIL",
                "seconds": round(c.seconds, 3), "failures": len(c.failures),
                "first_failure": c.failures[0] if c.failures else ""} for c in results]
    code = 0 if all(c.ok for c in results) else 1
    text = render(records, "text")
    failed = [c for c in results if not c.ok]
    for c in failed:
        text += f"\n{c.name}:\n" + "".join(f"  {f}\n" for f in c.failures[:20])
    text += f"\n{len(results) - len(failed)} of {len(results)} checks passed\n"
    return code, render(records, a.format, text=text)


# --------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text",
                        help="output format (default: text)")

    parser = argparse.ArgumentParser(
        prog="treecuts",
        description="Fringe reductions of random plane trees: exact laws, moments and experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(fn=fn)
        return p

    def mode_arg(p, required=True):
        p.add_argument("--mode", choices=MODES, required=required)

    p = add("enumerate", _cmd_enumerate, "list all plane trees of a given size")
    p.add_argument("--size", type=_size, required=True)
    p.add_argument("--cap", type=_size, default=DEFAULT_ENUMERATION_CAP,
                   help=f"largest size allowed (default {DEFAULT_ENUMERATION_CAP})")

    p = add("reduce", _cmd_reduce, "apply a reduction to one tree")
    mode_arg(p)
    p.add_argument("--rounds", type=_rounds, required=True)
    p.add_argument("--tree", required=True, help='canonical string such as "(()())"')

    p = add("dist", _cmd_dist, "exact law of a statistic of the reduced tree")
    mode_arg(p)
    p.add_argument("--size", type=_size, required=True)
    p.add_argument("--rounds", type=_rounds, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="size")
    p.add_argument("--method", choices=("brute", "gf"), default="gf")
    p.add_argument("--cap", type=_size, default=DEFAULT_ENUMERATION_CAP)

    p = add("moments", _cmd_moments, "mean, variance and a factorial moment")
    mode_arg(p)
    p.add_argument("--size", type=_size, required=True)
    p.add_argument("--rounds", type=_rounds, required=True)
    p.add_argument("--order", type=_positive, default=1, help="factorial moment order d")
    p.add_argument("--variant", choices=VARIANTS, default="size")
    p.add_argument("--method", choices=("exact", "closed", "asymptotic"), default="closed")

    p = add("totals", _cmd_totals, "expected total paths or old-path segments")
    p.add_argument("--kind", choices=("paths", "old-path-segments"), required=True)
    p.add_argument("--max-size", type=_int_at_least(2, "max size"), required=True)

    p = add("sample", _cmd_sample, "uniformly random trees for a seed")
    p.add_argument("--size", type=_size, required=True)
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    mode_arg(p, required=False)
    p.add_argument("--rounds", type=_rounds, default=1,
                   help="rounds applied when --mode is given (default 1)")

    p = add("clt", _cmd_clt, "standardized Monte-Carlo check of a central limit theorem")
    mode_arg(p)
    p.add_argument("--size", type=_size, required=True)
    p.add_argument("--rounds", type=_rounds, required=True)
    p.add_argument("--samples", type=_positive, required=True)
    p.add_argument("--seed", type=_seed, required=True)

    add("constants", _cmd_constants, "the constants of the asymptotic expansions")

    p = add("verify", _cmd_verify, "run the exact cross-check suite")
    p.add_argument("--quick", action="store_true", help="smaller sizes, a few seconds")
    p.add_argument("--only", default=None, help="run checks whose name contains this text")
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run the command, write its report and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports its own message
        return int(exc.code or 0)
    if getattr(args, "variant", None) is not None and getattr(args, "mode", None) is not None:
        if Variant.parse(args.variant) not in allowed_variants(args.mode):
            allowed = ", ".join(v.value for v in allowed_variants(args.mode))
            print(f"treecuts {args.command}: error: variant {args.variant!r} is not defined "
                  f"for mode {args.mode!r} (allowed: {allowed})", file=stderr)
            return 2
    try:
        code, output = args.fn(args)
    except (OptionError, ValueError) as exc:
        print(f"treecuts {args.command}: error: {exc}", file=stderr)
        return 2
    stdout.write(output)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
