"""Command-line front end.

Every command prints one JSON envelope on stdout, except ``curve --format
csv`` without ``--output``, which prints the bare CSV.  Errors go to stderr as a
JSON object, and the exit status says what went wrong: 2 bad arguments,
3 bound not applicable, 4 verification failure, 5 file I/O.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import numpy as np

from . import __version__
from .achievability import achievable_region
from .bounds import BoundId, BoundReport, evaluate
from .core import DomainError, NotApplicableError, OperatingPoint, ParamSet, PLCurve, format_rat, parse_rat
from .curves import normalized_outer_curve
from .fr import fr_normalized_curve

EXIT_OK, EXIT_ARGS, EXIT_INAPPLICABLE, EXIT_VERIFY, EXIT_IO = 0, 2, 3, 4, 5

BOUND_NAMES = {
    "cutset": BoundId.CUTSET,
    "trapezoid": BoundId.TRAPEZOID,
    "repair-matrix": BoundId.REPAIR_MATRIX,
    "mohajer-tandon": BoundId.MOHAJER_TANDON,
    "improved-mt": BoundId.IMPROVED_MT,
    "combined": BoundId.COMBINED,
    "tian433": BoundId.TIAN433,
    "linear": BoundId.LINEAR_K_EQ_D,
    "rank-dual": BoundId.RANK_DUAL,
}
RAW_KEY = "_raw_text"  # results carrying this key are written verbatim
CSV_HEADER = ["beta_bar", "alpha_bar", "beta_bar_frac", "alpha_bar_frac"]


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str, **extra: Any) -> None:
        super().__init__(message)
        self.code, self.kind, self.extra = code, kind, extra


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise CliError(EXIT_ARGS, "argument_error", message)


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


def _bound_name(text: str) -> str:
    name = text.replace("_", "-")
    if name == "linear-k-eq-d":
        name = "linear"
    return name


def _report_json(rep: BoundReport, name: str) -> dict[str, Any]:
    regime = None
    if rep.regime is not None:
        regime = {"mu": rep.regime.mu, "theta": rep.regime.theta, "nu": rep.regime.nu}
    return _jsonable(
        {"bound": name, "value": rep.value, "applicable": rep.applicable, "regime": regime, "detail": rep.detail}
    )


def _curve_json(curve: PLCurve) -> list[dict[str, str]]:
    return [{"beta_bar": format_rat(x), "alpha_bar": format_rat(y)} for x, y in curve.xy]


def curve_csv(curve: PLCurve) -> str:
    """CSV with approximate decimal columns followed by the exact fractions."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for x, y in curve.xy:
        w.writerow([f"{float(x):.12g}", f"{float(y):.12g}", format_rat(x), format_rat(y)])
    return buf.getvalue()


def _params(ns: argparse.Namespace) -> ParamSet:
    try:
        return ParamSet(ns.n, ns.k, ns.d)
    except DomainError as exc:
        raise CliError(EXIT_ARGS, "argument_error", str(exc)) from exc


def _rat_arg(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _seed(ns: argparse.Namespace) -> int:
    env = os.environ.get("RGC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise CliError(EXIT_ARGS, "argument_error", f"RGC_SEED is not an integer: {env!r}") from exc
    return ns.seed


# -- commands ---------------------------------------------------------------------------


def cmd_bounds(ns: argparse.Namespace) -> tuple[dict, dict, int]:
    params = _params(ns)
    try:
        point = OperatingPoint(ns.alpha, ns.beta)
        names = list(BOUND_NAMES) if ns.bound == "all" else [ns.bound]
        reports = {name: evaluate(params, point, BOUND_NAMES[name]) for name in names}
    except DomainError as exc:
        raise CliError(EXIT_ARGS, "argument_error", str(exc)) from exc
    active = min(r.value for r in reports.values())
    results = []
    for name, rep in reports.items():
        item = _report_json(rep, name)
        item["tightest"] = rep.value == active
        results.append(item)
    echo = {"n": params.n, "k": params.k, "d": params.d, "alpha": ns.alpha, "beta": ns.beta, "bound": ns.bound}
    code = EXIT_OK
    if ns.bound != "all" and "reason" in reports[ns.bound].detail:
        code = EXIT_INAPPLICABLE
    return _jsonable(echo), {"reports": results}, code


def _named_curve(params: ParamSet, name: str) -> PLCurve:
    if name == "achievable":
        return achievable_region(params)
    return normalized_outer_curve(params, BOUND_NAMES[name])


def cmd_curve(ns: argparse.Namespace) -> tuple[dict, dict, int]:
    params = _params(ns)
    try:
        curve = _named_curve(params, ns.bound)
    except NotApplicableError as exc:
        raise CliError(EXIT_INAPPLICABLE, "not_applicable", str(exc)) from exc
    except DomainError as exc:
        raise CliError(EXIT_ARGS, "argument_error", str(exc)) from exc
    echo = {"n": params.n, "k": params.k, "d": params.d, "bound": ns.bound, "format": ns.format}
    results: dict[str, Any] = {"vertices": _curve_json(curve)}
    if ns.format == "csv":
        text = curve_csv(curve)
        if ns.output:
            _write(Path(ns.output), text)
            results["csv_file"] = str(ns.output)
        else:
            return echo, {RAW_KEY: text}, EXIT_OK
    return echo, results, EXIT_OK


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_IO, "io_error", f"cannot write {path}: {exc.strerror or exc}") from exc


def compare_curves(params: ParamSet) -> dict[str, PLCurve]:
    """FR, explicit ER outer bounds and the achievable envelope for ``params``."""
    curves: dict[str, PLCurve] = {"fr": fr_normalized_curve(params)}
    for name in ("repair-matrix", "mohajer-tandon", "improved-mt", "combined", "linear", "tian433"):
        try:
            curves[name] = normalized_outer_curve(params, BOUND_NAMES[name])
        except NotApplicableError:
            pass
    try:
        curves["achievable"] = achievable_region(params)
    except DomainError:
        pass
    return curves


def dominance_table(curves: dict[str, PLCurve]) -> list[dict[str, Any]]:
    """At each vertex abscissa, the outer bound(s) forcing the largest alpha_bar."""
    outer = {k: c for k, c in curves.items() if k not in ("achievable",)}
    lo = max(c.beta_range[0] for c in outer.values())
    xs = sorted({x for c in outer.values() for x, _ in c.xy if x >= lo})
    rows = []
    for x in xs:
        vals = {k: c.alpha_at(x) for k, c in outer.items()}
        top = max(vals.values())
        rows.append({"beta_bar": x, "values": vals, "tightest": [k for k, v in vals.items() if v == top]})
    return rows


def cmd_compare(ns: argparse.Namespace) -> tuple[dict, dict, int]:
    params = _params(ns)
    out = Path(ns.out)
    curves = compare_curves(params)
    files = {}
    for name, curve in curves.items():
        fname = f"{name}.csv"
        _write(out / fname, curve_csv(curve))
        files[name] = fname
    table = dominance_table(curves)
    buf = io.StringIO()
    names = list(k for k in curves if k != "achievable")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["beta_bar_frac", *names, "tightest"])
    for row in table:
        w.writerow([format_rat(row["beta_bar"]), *(format_rat(row["values"][k]) for k in names), "|".join(row["tightest"])])
    _write(out / "dominance.csv", buf.getvalue())
    summary: dict[str, Any] = {}
    if "mohajer-tandon" in curves and "improved-mt" in curves:
        diffs = [r["values"]["improved-mt"] - r["values"]["mohajer-tandon"] for r in table]
        summary["improved_mt_strictly_tighter_points"] = sum(1 for d in diffs if d > 0)
        summary["improved_mt_equals_mt"] = curves["improved-mt"].xy == curves["mohajer-tandon"].xy
    manifest = {
        "params": {"n": params.n, "k": params.k, "d": params.d},
        "curves": files,
        "dominance": "dominance.csv",
        "summary": summary,
    }
    _write(out / "manifest.json", json.dumps(_jsonable(manifest), indent=2) + "\n")
    echo = {"n": params.n, "k": params.k, "d": params.d, "out": str(out)}
    results = {"files": sorted([*files.values(), "dominance.csv", "manifest.json"]), "summary": summary}
    return echo, _jsonable(results), EXIT_OK


def _verify_layered(ns: argparse.Namespace) -> tuple[dict, dict, int]:
    from .linalg import construct_layered_code, gf_rank, verify_layered_code

    if ns.n is None or ns.r is None:
        raise CliError(EXIT_ARGS, "argument_error", "the layered suite needs --n and --r")
    try:
        code = construct_layered_code(ns.n, ns.r)
    except DomainError as exc:
        raise CliError(EXIT_ARGS, "argument_error", str(exc)) from exc
    rep = verify_layered_code(code)
    results = {
        "alpha": code.alpha,
        "beta": code.beta,
        "file_size": code.file_size,
        "rank_parity": gf_rank(code.parity),
        "checks": rep.checks,
        "details": rep.details,
        "passed": rep.ok,
    }
    echo = {"suite": "layered", "n": ns.n, "r": ns.r}
    return echo, _jsonable(results), EXIT_OK if rep.ok else EXIT_VERIFY


def _verify_chain(ns: argparse.Namespace) -> tuple[dict, dict, int]:
    from .bounds import fr_dual_rank_bound
    from .linalg import build_chain, check_chain_rank_bounds, gf_rank, incremental_ranks, random_h_repair, verify_chain_lemmas
    from .linalg.matrix_io import block_to_json

    n, alpha, beta, p = ns.n or 5, ns.alpha or 4, ns.beta or 2, ns.field
    k = ns.k if ns.k is not None else n - 1
    seed = _seed(ns)
    try:
        params = ParamSet(n, n - 1, n - 1)
        dual = fr_dual_rank_bound(params, OperatingPoint(alpha, beta))
    except DomainError as exc:
        raise CliError(EXIT_ARGS, "argument_error", str(exc)) from exc
    violations = 0
    first_failure: Optional[dict] = None
    for trial in range(ns.trials):
        try:
            h = random_h_repair(n, alpha, beta, p, np.random.default_rng([seed, trial]), k=k)
        except DomainError as exc:
            raise CliError(EXIT_ARGS, "argument_error", str(exc)) from exc
        chain = build_chain(h)
        lemmas = verify_chain_lemmas(chain)
        rank_bounds = check_chain_rank_bounds(chain)
        inc = incremental_ranks(h)
        issues: list[Any] = list(lemmas.violations) + [{"check": "rank_bound", **b} for b in rank_bounds]
        if not inc.ok:
            issues.append({"check": "incremental", "deltas": inc.deltas, "lower": inc.lower})
        if gf_rank(h.base) < dual:
            issues.append({"check": "fr_dual", "rank": gf_rank(h.base), "bound": dual})
        violations += len(issues)
        if issues and first_failure is None:
            first_failure = {"trial": trial, "issues": issues, "matrix": block_to_json(h)}
    echo = {"suite": "chain", "n": n, "k": k, "alpha": alpha, "beta": beta, "field": p, "trials": ns.trials, "seed": seed}
    results: dict[str, Any] = {"violations": violations, "passed": violations == 0}
    if first_failure is not None:
        results["counterexample"] = first_failure
    return echo, _jsonable(results), EXIT_OK if violations == 0 else EXIT_VERIFY


def _verify_hrepair(ns: argparse.Namespace) -> tuple[dict, dict, int]:
    from .linalg import validate_h_repair
    from .linalg.matrix_io import load_block

    if not ns.matrix:
        raise CliError(EXIT_ARGS, "argument_error", "the hrepair suite needs --matrix FILE")
    try:
        h = load_block(ns.matrix)
    except OSError as exc:
        raise CliError(EXIT_IO, "io_error", f"cannot read {ns.matrix}: {exc.strerror or exc}") from exc
    except (json.JSONDecodeError, DomainError) as exc:
        raise CliError(EXIT_ARGS, "argument_error", str(exc)) from exc
    try:
        rep = validate_h_repair(h, ns.k)
    except DomainError as exc:
        raise CliError(EXIT_ARGS, "argument_error", str(exc)) from exc
    results = {
        "violations": rep.violations,
        "degenerate": rep.degenerate,
        "max_offdiag_rank": rep.max_offdiag_rank,
        "passed": rep.ok,
    }
    echo = {"suite": "hrepair", "matrix": ns.matrix, "k": ns.k}
    return echo, _jsonable(results), EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_verify(ns: argparse.Namespace) -> tuple[dict, dict, int]:
    return {"layered": _verify_layered, "chain": _verify_chain, "hrepair": _verify_hrepair}[ns.suite](ns)


# -- parser -----------------------------------------------------------------------------


def _add_nkd(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="erbounds", description="Exact-repair regenerating code bound calculator.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("bounds", help="evaluate file-size bounds at one operating point")
    _add_nkd(sp)
    sp.add_argument("--alpha", type=_rat_arg, required=True, help="storage per node, p/q or integer")
    sp.add_argument("--beta", type=_rat_arg, required=True, help="per-helper download, p/q or integer")
    sp.add_argument("--bound", type=_bound_name, choices=[*BOUND_NAMES, "all"], default="all")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("curve", help="normalized outer-bound or achievable curve")
    _add_nkd(sp)
    sp.add_argument("--bound", type=_bound_name, choices=[*BOUND_NAMES, "achievable"], required=True)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--output", help="write the CSV here instead of embedding it")
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("compare", help="write all curves and a dominance table")
    _add_nkd(sp)
    sp.add_argument("--out", default="compare_out", help="output directory")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("verify", help="finite-field verification suites")
    sp.add_argument("--suite", choices=["layered", "chain", "hrepair"], required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--alpha", type=int)
    sp.add_argument("--beta", type=int)
    sp.add_argument("--field", type=int, choices=[2, 3, 5, 7], default=2)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--matrix", help="block matrix JSON file (hrepair suite)")
    sp.set_defaults(func=cmd_verify)
    return ap


def _echo_command(argv: Sequence[str]) -> str:
    return " ".join(["erbounds", *argv])


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    start = time.perf_counter()
    try:
        ns = build_parser().parse_args(argv)
        func: Callable[[argparse.Namespace], tuple[dict, dict, int]] = ns.func
        params, results, code = func(ns)
    except CliError as exc:
        err = {"error": exc.kind, "message": str(exc), "exit_code": exc.code, **exc.extra}
        stderr.write(json.dumps(err) + "\n")
        return exc.code
    if RAW_KEY in results:
        stdout.write(results[RAW_KEY])
        return code
    envelope = {
        "tool_version": __version__,
        "command": _echo_command(argv),
        "params": _jsonable(params),
        "results": results,
        "timing": {"elapsed_s": round(time.perf_counter() - start, 6)},
    }
    stdout.write(json.dumps(envelope, indent=2) + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
