"""Command-line entry point: ``hilbert-forge <subcommand>``.

Subcommands
-----------
constants   print q, π/sin(π/p), C, C' and the four Gamma arguments
verify      run a suite config and write a JSON/CSV/text report
sweep       expand a suite config into its instance list without running it
sharpness   ratio table for the truncated power families (CSV)
selftest    special-function and quadrature oracle checks

Exit codes: 0 clean, 1 violation / drift / failed check, 2 bad input.
"""
from __future__ import annotations

import argparse
import concurrent.futures as cf
import csv
import hashlib
import io
import itertools
import json
import math
import os
import random
import sys
import time
from datetime import datetime, timezone
from importlib import resources
from typing import Any, Iterable

from .errors import (
    DivergenceDetected,
    DomainError,
    IndexMismatch,
    NonConvergence,
    ToleranceUnreachable,
)
from .funcspace import KernelParams, function_from_dict, sequence_from_dict
from .inequalities import (
    INEQUALITY_IDS,
    SumDiscreteInstance,
    SumIntegralInstance,
    Verdict,
    check_superadditivity,
    verify_hilbert_discrete,
    verify_hilbert_integral,
    verify_lemma_offset_discrete,
    verify_sum_discrete,
    verify_sum_integral,
    verify_weighted_integral,
)
from .specialfn import HolderPair, bound_constants, gamma_arguments, hilbert_constant

CONFIG_VERSION = 1
DOCUMENT_VERSION = 1
DEFAULT_TOLERANCES = {"integral": 1e-8, "series": 1e-10}
REPORT_FIELDS = (
    "version",
    "inequality_id",
    "instance_descriptor",
    "lhs",
    "lhs_error",
    "rhs",
    "rhs_error",
    "ratio",
    "verdict",
    "wall_time_ms",
)

_GRID_KEYS = {
    "hilbert_integral": {"p", "f", "g"},
    "lemma_2_3": {"p", "lam", "n", "f", "g"},
    "lemma_2_4": {"p", "lam", "n", "gamma", "gamma_frac", "f", "g"},
    "thm_2_2": {"p", "lam", "n", "gamma", "gamma_frac", "m", "f", "g"},
    "hilbert_discrete": {"p", "a", "b"},
    "lemma_2_2": {"p", "c", "d"},
    "thm_2_1": {"p", "k", "a", "b", "c", "d"},
    "lemma_2_1": {"a", "b", "alpha"},
}
_FUNCTION_KEYS = ("f", "g")
_SEQUENCE_KEYS = ("a", "b", "c", "d")


class ConfigError(ValueError):
    """Invalid configuration or CLI arguments (exit code 2)."""


# ---------------------------------------------------------------------------
# JSON with 17 significant digits


def _render(obj: Any, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [json.dumps(str(k), ensure_ascii=False) + ": " + _render(v, indent, level + 1) for k, v in obj.items()]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [_render(v, indent, level + 1) for v in obj]
        return "[" + pad + ("," + pad).join(items) + end + "]"
    if hasattr(obj, "item"):
        return _render(obj.item(), indent, level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON: key order as given, floats at 17g, NaN/inf as null."""
    return _render(obj, indent, 0) + "\n"


# ---------------------------------------------------------------------------
# configuration


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    validate_config(cfg)
    return cfg


def default_config_path() -> str:
    return str(resources.files("hilbert_forge") / "data" / "default_suite.json")


def validate_config(cfg: Any) -> None:
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    if cfg.get("version") != CONFIG_VERSION:
        raise ConfigError(f"config version must be {CONFIG_VERSION}, got {cfg.get('version')!r}")
    ids = cfg.get("inequalities")
    if not isinstance(ids, list) or not ids:
        raise ConfigError("'inequalities' must be a nonempty list")
    for ident in ids:
        if ident not in INEQUALITY_IDS:
            raise ConfigError(f"unknown inequality identifier {ident!r}")
    fams = cfg.get("families")
    if not isinstance(fams, list) or not fams:
        raise ConfigError("'families' must be a nonempty list")
    for i, fam in enumerate(fams):
        if not isinstance(fam, dict):
            raise ConfigError(f"families[{i}] must be an object")
        ident = fam.get("inequality")
        if ident not in ids:
            raise ConfigError(f"families[{i}] names {ident!r}, which is not listed in 'inequalities'")
        if fam.get("expect", "admissible") not in ("admissible", "any"):
            raise ConfigError(f"families[{i}].expect must be 'admissible' or 'any'")
        grid = fam.get("grid")
        if not isinstance(grid, dict):
            raise ConfigError(f"families[{i}].grid must be an object")
        extra = set(grid) - _GRID_KEYS[ident] - ({"random"} if ident == "lemma_2_1" else set())
        if extra:
            raise ConfigError(f"families[{i}] has unknown grid keys {sorted(extra)} for {ident}")
        for key, values in grid.items():
            if key != "random" and (not isinstance(values, list) or not values):
                raise ConfigError(f"families[{i}].grid.{key} must be a nonempty list")
    tols = cfg.get("tolerances", {})
    if not isinstance(tols, dict) or set(tols) - set(DEFAULT_TOLERANCES):
        raise ConfigError(f"'tolerances' may only set {sorted(DEFAULT_TOLERANCES)}")
    for k, v in tols.items():
        if not (isinstance(v, (int, float)) and 0 < v < 1):
            raise ConfigError(f"tolerance {k} must lie in (0, 1), got {v!r}")
    caps = cfg.get("caps", {})
    if not isinstance(caps, dict) or any(not (isinstance(v, int) and v > 0) for v in caps.values()):
        raise ConfigError("'caps' values must be positive integers")
    # grids are expanded and every instance constructed before any computation
    for spec in expand(cfg):
        build_instance(spec)


def _random_superadditivity(spec: dict) -> list[dict]:
    rng = random.Random(int(spec.get("seed", 0)))
    count = int(spec.get("count", 100))
    lo, hi = spec.get("size", [2, 5])
    out = []
    for _ in range(count):
        size = rng.randint(int(lo), int(hi))
        a = [rng.uniform(0.0, 10.0) for _ in range(size)]
        b = [rng.uniform(0.01, 10.0) for _ in range(size)]
        raw = [rng.uniform(0.05, 1.0) for _ in range(size)]
        total = math.fsum(raw)
        alpha = [r / total for r in raw]
        alpha[-1] = 1.0 - math.fsum(alpha[:-1])
        out.append({"a": a, "b": b, "alpha": alpha})
    return out


def _substitute(desc: dict, n: int) -> dict:
    # "depth": "n" ties the integrated family to the derivative order of the instance
    return {k: (n if v == "n" else v) for k, v in desc.items()}


def expand(cfg: dict) -> list[dict]:
    """All (inequality, parameter set) pairs in config order."""
    out: list[dict] = []
    for fam in cfg["families"]:
        ident = fam["inequality"]
        expect = fam.get("expect", "admissible")
        grid = dict(fam["grid"])
        if ident == "lemma_2_1":
            cases = []
            if "random" in grid:
                cases += _random_superadditivity(grid.pop("random"))
            if grid:
                keys = ("a", "b", "alpha")
                if set(grid) != set(keys):
                    raise ConfigError("lemma_2_1 grids need all of a, b and alpha")
                cases += [dict(zip(keys, combo)) for combo in zip(*(grid[k] for k in keys))]
            out += [{"inequality": ident, "expect": expect, "params": c} for c in cases]
            continue
        keys = list(grid)
        for combo in itertools.product(*(grid[k] for k in keys)):
            params = dict(zip(keys, combo))
            if "g" not in params and "f" in params:
                params["g"] = params["f"]
            if ident in ("hilbert_discrete", "thm_2_1") and "b" not in params:
                params["b"] = params["a"]
            if ident in ("lemma_2_2", "thm_2_1") and "d" not in params:
                params["d"] = params["c"]
            n = int(params.get("n", 0))
            for key in _FUNCTION_KEYS:
                if key in params:
                    params[key] = _substitute(params[key], n)
            out.append({"inequality": ident, "expect": expect, "params": params})
    return out


def _pair(params: dict) -> HolderPair:
    return HolderPair(float(params["p"]))


def _kernel(params: dict, pair: HolderPair) -> KernelParams:
    lam = float(params.get("lam", 1.0))
    n = params.get("n", 0)
    if isinstance(n, float) and n.is_integer():
        n = int(n)
    base = KernelParams(lam, 0.0, n)
    if "gamma" in params and "gamma_frac" in params:
        raise DomainError("give either gamma or gamma_frac, not both")
    if "gamma_frac" in params:
        frac = float(params["gamma_frac"])
        if not 0 < frac < 1:
            raise DomainError(f"gamma_frac must lie in (0, 1), got {frac!r}")
        lo, hi = base.gamma_interval(pair)
        return KernelParams(lam, lo + frac * (hi - lo), n)
    return KernelParams(lam, float(params.get("gamma", 0.0)), n)


def build_instance(spec: dict):
    """Construct library objects for one expanded instance (ConfigError on failure)."""
    ident, params = spec["inequality"], spec["params"]
    try:
        if ident == "lemma_2_1":
            return ident, (params["a"], params["b"], params["alpha"])
        pair = _pair(params)
        if ident in ("hilbert_integral", "lemma_2_3", "lemma_2_4", "thm_2_2"):
            f = function_from_dict(params["f"])
            g = function_from_dict(params["g"])
            if ident == "hilbert_integral":
                return ident, (f, g, pair)
            kp = _kernel(params, pair)
            if ident == "thm_2_2":
                return ident, SumIntegralInstance(f, g, pair, kp, int(params.get("m", 1)))
            return ident, (f, g, pair, kp)
        seqs = {k: sequence_from_dict(params[k]) for k in _SEQUENCE_KEYS if k in params}
        if ident == "hilbert_discrete":
            return ident, (seqs["a"], seqs["b"], pair)
        if ident == "lemma_2_2":
            return ident, (seqs["c"], seqs["d"], pair)
        return ident, SumDiscreteInstance(seqs["a"], seqs["b"], seqs["c"], seqs["d"], pair, int(params.get("k", 1)))
    except KeyError as exc:
        raise ConfigError(f"{ident}: missing parameter {exc}") from None
    except (DomainError, IndexMismatch, TypeError, ValueError) as exc:
        raise ConfigError(f"{ident}: {exc}") from None


def run_instance(spec: dict, tolerances: dict) -> dict:
    """Verify one instance; returns the serialised report or a failure record."""
    ident, obj = build_instance(spec)
    ti, ts = tolerances["integral"], tolerances["series"]
    try:
        if ident == "hilbert_integral":
            rep = verify_hilbert_integral(*obj, tol=ti)
        elif ident == "lemma_2_3":
            rep = verify_weighted_integral(*obj, variant="C", tol=ti)
        elif ident == "lemma_2_4":
            rep = verify_weighted_integral(*obj, variant="C_prime", tol=ti)
        elif ident == "thm_2_2":
            rep = verify_sum_integral(obj, tol=ti)
        elif ident == "hilbert_discrete":
            rep = verify_hilbert_discrete(*obj, tol=ts)
        elif ident == "lemma_2_2":
            rep = verify_lemma_offset_discrete(*obj, tol=ts)
        elif ident == "thm_2_1":
            rep = verify_sum_discrete(obj, tol=ts)
        else:
            rep = check_superadditivity(*obj)
    except (ToleranceUnreachable, NonConvergence, DivergenceDetected, OverflowError) as exc:
        return {"failure": f"{type(exc).__name__}: {exc}", "inequality_id": ident}
    return {"report": rep.to_dict()}


def _apply_caps(cfg: dict) -> None:
    # the environment variable wins over the config file
    caps = cfg.get("caps", {})
    if caps and not os.environ.get("HILBERT_FORGE_CAP"):
        os.environ["HILBERT_FORGE_CAP"] = str(min(caps.values()))


def run_suite(cfg: dict, tol: float | None = None, jobs: int | None = None) -> dict:
    """Run every instance of a validated config; results follow config order."""
    tolerances = dict(DEFAULT_TOLERANCES)
    tolerances.update(cfg.get("tolerances", {}))
    if tol is not None:
        tolerances = {k: tol for k in tolerances}
    _apply_caps(cfg)
    specs = expand(cfg)
    jobs = jobs or os.cpu_count() or 1
    started = time.perf_counter()
    if jobs == 1 or len(specs) < 2:
        results = [run_instance(s, tolerances) for s in specs]
    else:
        with cf.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_instance, specs, itertools.repeat(tolerances), chunksize=1))

    reports, failures = [], []
    unexpected = 0
    for index, (spec, res) in enumerate(zip(specs, results)):
        if "failure" in res:
            failures.append({"index": index, "inequality_id": res["inequality_id"], "error": res["failure"]})
            continue
        rep = res["report"]
        if rep["verdict"] == Verdict.INADMISSIBLE.value and spec["expect"] == "admissible":
            unexpected += 1
        reports.append(rep)
    counts = {v.value: sum(r["verdict"] == v.value for r in reports) for v in Verdict}
    summary = {"instances": len(specs), **counts, "unexpected_inadmissible": unexpected, "failures": len(failures)}
    return {
        "version": DOCUMENT_VERSION,
        "config_digest": hashlib.sha256(dumps(cfg).encode()).hexdigest(),
        "tolerances": tolerances,
        "summary": summary,
        "reports": reports,
        "failures": failures,
        "metadata": {
            "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "jobs": jobs,
            "elapsed_s": round(time.perf_counter() - started, 3),
        },
    }


def suite_exit_code(doc: dict) -> int:
    s = doc["summary"]
    return 1 if (s["VIOLATED"] or s["unexpected_inadmissible"] or s["failures"]) else 0


# ---------------------------------------------------------------------------
# comparison


def comparison_subset(doc: dict) -> dict:
    """Everything except run metadata and wall-clock timings."""
    out = {k: v for k, v in doc.items() if k != "metadata"}
    out["reports"] = [{k: v for k, v in r.items() if k != "wall_time_ms"} for r in doc.get("reports", [])]
    return out


def _num(x) -> float:
    return math.nan if x is None else float(x)


def compare_documents(current: dict, baseline: dict) -> tuple[bool, str]:
    """(ok, message): identical subsets, or numeric drift inside the error bounds."""
    a, b = comparison_subset(current), comparison_subset(baseline)
    if dumps(a) == dumps(b):
        return True, "identical"
    ra, rb = a.get("reports", []), b.get("reports", [])
    if len(ra) != len(rb):
        return False, f"report count differs: {len(ra)} vs {len(rb)}"
    for i, (x, y) in enumerate(zip(ra, rb)):
        for key in ("inequality_id", "instance_descriptor", "verdict"):
            if x.get(key) != y.get(key):
                return False, f"report {i}: {key} differs"
        for key, ekey in (("lhs", "lhs_error"), ("rhs", "rhs_error")):
            vx, vy = _num(x[key]), _num(y[key])
            if math.isnan(vx) and math.isnan(vy):
                continue
            allowed = _num(x[ekey]) + _num(y[ekey])
            if not abs(vx - vy) <= allowed:
                return False, f"report {i}: {key} drifted by {abs(vx - vy):.3g} (allowed {allowed:.3g})"
    if a.get("failures") != b.get("failures"):
        return False, "failure list differs"
    return True, "drift within error bounds"


# ---------------------------------------------------------------------------
# output helpers


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g") if math.isfinite(x) else "nan"
    return str(x)


def reports_csv(reports: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_FIELDS)
    for r in reports:
        w.writerow([_fmt(r[k]) for k in REPORT_FIELDS])
    return buf.getvalue()


def reports_text(doc: dict) -> str:
    lines = []
    for r in doc["reports"]:
        lines.append(
            f"{r['inequality_id']:<16} {r['verdict']:<18} ratio={_fmt(r['ratio'])} "
            f"lhs={_fmt(r['lhs'])}±{_fmt(r['lhs_error'])} rhs={_fmt(r['rhs'])}±{_fmt(r['rhs_error'])}"
        )
    for f in doc["failures"]:
        lines.append(f"{f['inequality_id']:<16} FAILED             {f['error']}")
    s = doc["summary"]
    lines.append(
        f"instances={s['instances']} HOLDS={s['HOLDS']} HOLDS_WITHIN_ERROR={s['HOLDS_WITHIN_ERROR']} "
        f"VIOLATED={s['VIOLATED']} INADMISSIBLE={s['INADMISSIBLE']} "
        f"unexpected_inadmissible={s['unexpected_inadmissible']} failures={s['failures']}"
    )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_constants(args) -> int:
    pair = HolderPair(args.p)
    params = KernelParams(args.lam, args.gamma, args.n)
    consts = bound_constants(pair, params)
    args_table = gamma_arguments(pair, params.lam, params.n, params.gamma_shift)
    data = {
        "p": pair.p,
        "q": pair.q,
        "lambda": params.lam,
        "n": params.n,
        "gamma": params.gamma_shift,
        "hilbert": hilbert_constant(pair),
        "C": consts.C,
        "C_prime": consts.C_prime,
        "gamma_arguments": args_table,
    }
    if args.format == "json":
        text = dumps(data)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "value"])
        for k, v in data.items():
            if k == "gamma_arguments":
                for label, val in v.items():
                    w.writerow([f"Gamma argument {label}", _fmt(val)])
            else:
                w.writerow([k, _fmt(v)])
        text = buf.getvalue()
    else:
        rows = [(k, v) for k, v in data.items() if k != "gamma_arguments"]
        rows += [(f"Gamma argument {label}", v) for label, v in args_table.items()]
        width = max(len(k) for k, _ in rows)
        text = "".join(f"{k:<{width}}  {_fmt(v)}\n" for k, v in rows)
    _write(text, args.out)
    return 0


def _resolve_config(args) -> dict:
    path = args.config or default_config_path()
    return load_config(path)


def cmd_verify(args) -> int:
    cfg = _resolve_config(args)
    out_cfg = cfg.get("output", {})
    fmt = args.format or out_cfg.get("format", "json")
    out = args.out or out_cfg.get("path")
    doc = run_suite(cfg, tol=args.tol, jobs=args.jobs)
    if fmt == "json":
        text = dumps(doc)
    elif fmt == "csv":
        text = reports_csv(doc["reports"])
    else:
        text = reports_text(doc)
    _write(text, out)
    code = suite_exit_code(doc)
    if args.compare:
        try:
            with open(args.compare, encoding="utf-8") as fh:
                baseline = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read baseline {args.compare}: {exc}") from None
        ok, message = compare_documents(doc, baseline)
        print(f"compare: {message}", file=sys.stderr)
        if not ok:
            code = 1
    s = doc["summary"]
    print(
        f"verify: {s['instances']} instances, VIOLATED={s['VIOLATED']}, "
        f"unexpected_inadmissible={s['unexpected_inadmissible']}, failures={s['failures']}",
        file=sys.stderr,
    )
    return code


def cmd_sweep(args) -> int:
    cfg = _resolve_config(args)
    specs = expand(cfg)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "inequality_id", "expect", "params"])
        for i, s in enumerate(specs):
            w.writerow([i, s["inequality"], s["expect"], json.dumps(s["params"], sort_keys=True)])
        text = buf.getvalue()
    elif args.format == "text":
        text = "".join(f"{i:>5} {s['inequality']:<16} {json.dumps(s['params'], sort_keys=True)}\n" for i, s in enumerate(specs))
    else:
        text = dumps({"version": CONFIG_VERSION, "instances": specs})
    _write(text, args.out)
    return 0


def _parse_points(raw: str, mode: str) -> list[float]:
    try:
        pts = [float(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"bad probe list {raw!r}") from None
    if not pts:
        raise ConfigError("no probe points given")
    for x in pts:
        if mode == "integral" and not (math.isfinite(x) and x > 1):
            raise ConfigError(f"integral probes need T > 1, got {x:g}")
        if mode == "discrete" and not (x.is_integer() and x >= 2):
            raise ConfigError(f"discrete probes need integer N >= 2, got {x:g}")
    return pts


def cmd_sharpness(args) -> int:
    from .sharpness import is_monotone, probe_discrete, probe_integral, write_probe_csv

    pair = HolderPair(args.p)
    pts = _parse_points(args.points, args.mode)
    if args.mode == "integral":
        tol = args.tol if args.tol is not None else 1e-10
        rows = [probe_integral(pair, T, tol) for T in pts]
    else:
        tol = args.tol if args.tol is not None else 1e-12
        rows = [probe_discrete(pair, int(N), tol) for N in pts]
    if args.format == "json":
        text = dumps([dict(zip(("probe", "lhs", "lhs_error", "rhs", "rhs_error", "ratio"), r.row())) for r in rows])
    elif args.format == "text":
        text = "".join(f"{_fmt(r.probe):>12}  ratio={_fmt(r.ratio)}\n" for r in rows)
    else:
        text = write_probe_csv(rows)
    _write(text, args.out)
    if not is_monotone(rows):
        print("sharpness: ratios are not strictly increasing inside (0, 1)", file=sys.stderr)
        return 1
    return 0


def selftest_checks() -> list[tuple[str, bool, str]]:
    """Oracle checks for the special functions and the quadrature."""
    import numpy as np

    from .quadrature import integrate_interval, integrate_kernel_double, integrate_semi_infinite
    from .funcspace import MonomialExponential
    from .specialfn import gamma, log_gamma

    checks = []
    worst = max(abs(gamma(k) - math.factorial(k - 1)) / math.factorial(k - 1) for k in range(1, 21))
    checks.append(("gamma factorials k=1..20", worst <= 1e-12, f"max rel {worst:.2e}"))
    xs = np.linspace(0.01, 0.99, 99)
    worst = max(abs(gamma(x) * gamma(1 - x) * math.sin(math.pi * x) / math.pi - 1) for x in xs)
    checks.append(("gamma reflection on 99 points", worst <= 1e-10, f"max rel {worst:.2e}"))
    worst = max(abs(log_gamma(x) - math.lgamma(x)) / max(1.0, abs(math.lgamma(x))) for x in np.geomspace(1e-3, 1e5, 200))
    checks.append(("log_gamma against libm", worst <= 1e-12, f"max rel {worst:.2e}"))
    worst = 0.0
    for p in (1.25, 1.5, 2.0, 3.0, 5.0, 10.0):
        c = bound_constants(HolderPair(p), KernelParams(1.0)).C
        worst = max(worst, abs(c / (math.pi / math.sin(math.pi / p)) - 1))
    checks.append(("C(λ=1, n=0) = π/sin(π/p)", worst <= 1e-10, f"max rel {worst:.2e}"))

    singles = [
        ("∫ e^-x", lambda x: np.exp(-x), 1.0),
        ("∫ x e^-x", lambda x: x * np.exp(-x), 1.0),
        ("∫ x^-1/2 e^-x", lambda x: x**-0.5 * np.exp(-x), math.sqrt(math.pi)),
    ]
    for name, fn, exact in singles:
        r = integrate_semi_infinite(fn, tol=1e-8)
        ok = abs(r.value - exact) <= r.error_bound <= 1e-8
        checks.append((name, ok, f"err {abs(r.value - exact):.2e} bound {r.error_bound:.2e}"))
    r = integrate_interval(lambda x: x**7 - 3 * x**2, 0.0, 2.0, tol=1e-12)
    checks.append(("polynomial on [0, 2]", abs(r.value - 24.0) <= max(r.error_bound, 1e-13), f"value {r.value!r}"))
    e0, e1 = MonomialExponential(0.0, 1.0), MonomialExponential(1.0, 1.0)
    for name, f, g, lam, exact in (
        ("kernel e^-x, e^-y, λ=1", e0, e0, 1.0, 1.0),
        ("kernel x e^-x, y e^-y, λ=1", e1, e1, 1.0, 1.0 / 3.0),
        ("kernel x e^-x, y e^-y, λ=2", e1, e1, 2.0, 1.0 / 6.0),
    ):
        r = integrate_kernel_double(f, g, lam, tol=1e-8)
        ok = abs(r.value - exact) <= r.error_bound <= 1e-8
        checks.append((name, ok, f"err {abs(r.value - exact):.2e} bound {r.error_bound:.2e}"))
    return checks


def cmd_selftest(args) -> int:
    checks = selftest_checks()
    if args.format == "json":
        text = dumps([{"check": n, "passed": ok, "detail": d} for n, ok, d in checks])
    else:
        text = "".join(f"{'PASS' if ok else 'FAIL'}  {n}  ({d})\n" for n, ok, d in checks)
    _write(text, args.out)
    return 0 if all(ok for _, ok, _ in checks) else 1


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--tol", type=float, default=None, help="relative tolerance override")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--compare", default=None, help="baseline report; exit 1 on drift")

    parser = _Parser(prog="hilbert-forge", description="Numerical verification of Hilbert-type inequalities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("constants", parents=[common], help="print the bound constants")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.set_defaults(func=cmd_constants, default_format="text")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("config", nargs="?", help="suite config (default: bundled suite)")
    p.set_defaults(func=cmd_verify, default_format=None)

    p = sub.add_parser("sweep", parents=[common], help="expand a suite config into instances")
    p.add_argument("config", nargs="?", help="suite config (default: bundled suite)")
    p.set_defaults(func=cmd_sweep, default_format="json")

    p = sub.add_parser("sharpness", parents=[common], help="ratio table for the near-extremal families")
    p.add_argument("--mode", choices=("integral", "discrete"), default="integral")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--points", required=True, help="comma-separated T (integral) or N (discrete) values")
    p.set_defaults(func=cmd_sharpness, default_format="csv")

    p = sub.add_parser("selftest", parents=[common], help="special-function and quadrature oracle checks")
    p.set_defaults(func=cmd_selftest, default_format="text")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    if args.jobs is not None and args.jobs < 1:
        print("hilbert-forge: --jobs must be at least 1", file=sys.stderr)
        return 2
    if args.tol is not None and not (0 < args.tol < 1):
        print("hilbert-forge: --tol must lie in (0, 1)", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ConfigError, DomainError, IndexMismatch) as exc:
        print(f"hilbert-forge: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
