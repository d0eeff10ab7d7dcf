"""bdl: command line driver for the duality checks.

    bdl run --check <name> [--config path] [flags]
    bdl list
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields

from flint import fmpz

from .checks import CHECK_INFO, InstanceConfig, plan, run_instance

CHECK_NAMES = list(CHECK_INFO) + ["all"]

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def _intlist(s):
    try:
        return [int(x) for x in s.replace(" ", "").split(",") if x != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bdl")
    sub = p.add_subparsers(dest="cmd", required=True)
    sub.add_parser("list", help="list available checks")
    r = sub.add_parser("run", help="run a check")
    r.add_argument("--check", required=True, choices=CHECK_NAMES)
    r.add_argument("--config")
    r.add_argument("--n", type=int)
    r.add_argument("--m", type=int)
    r.add_argument("--a", type=_intlist)
    r.add_argument("--b", type=_intlist)
    r.add_argument("--seed", type=int)
    r.add_argument("--mode", choices=["exact", "modular"])
    r.add_argument("--prime", type=int)
    r.add_argument("--depth", type=int)
    r.add_argument("--jobs", type=int)
    r.add_argument("--out")
    r.add_argument("--sampling", choices=["auto", "random", "symbolic"])
    r.add_argument("--samples", type=int)
    r.add_argument("--height", type=int)
    r.add_argument("--budget", type=float, help="seconds per instance")
    r.add_argument("--large", action="store_true", default=None,
                   help="allow instances with n + m >= 5")
    r.add_argument("--negative-control", action="store_true", default=None)
    r.add_argument("--timings", action="store_true",
                   help="record wall-clock times (reports are then not reproducible)")
    r.add_argument("--format", choices=["text", "json"], default="text")
    return p


def load_config(args) -> tuple[dict, int | None]:
    """Merge config file and flags.  Returns (base config dict, jobs override)."""
    base: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(base, dict):
            raise ConfigError("config file must hold a JSON object")
        known = {f.name for f in fields(InstanceConfig)}
        unknown = set(base) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key in ("n", "m", "a", "b", "seed", "mode", "prime", "depth", "jobs", "sampling",
                "samples", "height", "budget", "large", "negative_control"):
        val = getattr(args, key)
        if val is not None:
            base[key] = val
    env = os.environ.get("BDL_JOBS")
    if env is not None and args.jobs is None:
        try:
            base["jobs"] = int(env)
        except ValueError as exc:
            raise ConfigError(f"BDL_JOBS must be an integer, got {env!r}") from exc
    return base


def validate(cfg: InstanceConfig) -> None:
    def need(cond, msg):
        if not cond:
            raise ConfigError(msg)

    need(cfg.check in CHECK_INFO, f"unknown check {cfg.check}")
    for key in ("n", "m"):
        v = getattr(cfg, key)
        need(v is None or (isinstance(v, int) and v >= 1), f"{key} must be a positive integer")
    for key, dim in (("a", cfg.n), ("b", cfg.m)):
        v = getattr(cfg, key)
        if v is None:
            continue
        need(isinstance(v, list) and all(isinstance(x, int) and x >= 0 for x in v),
             f"{key} must be a list of non-negative integers")
        if cfg.check != "commutativity":
            need(dim is None or len(v) == dim, f"{key} must have length {dim}")
    if cfg.check not in ("commutativity", "main1", "ore-identities"):
        n = cfg.n if cfg.n is not None else 2
        m = cfg.m if cfg.m is not None else 2
        a = cfg.a if cfg.a is not None else [1] * n if n == 2 else None
        b = cfg.b if cfg.b is not None else [1] * m if m == 2 else None
        need(a is not None and len(a) == n, "a must be given with length n")
        need(b is not None and len(b) == m, "b must be given with length m")
        need(sum(a) == sum(b), f"sum(a) = {sum(a)} must equal sum(b) = {sum(b)}")
    need(isinstance(cfg.seed, int), "seed must be an integer")
    need(isinstance(cfg.height, int) and cfg.height >= 1, "height must be >= 1")
    need(isinstance(cfg.depth, int) and cfg.depth >= 0, "depth must be >= 0")
    need(isinstance(cfg.samples, int) and cfg.samples >= 1, "samples must be >= 1")
    need(isinstance(cfg.trials, int) and cfg.trials >= 1, "trials must be >= 1")
    need(isinstance(cfg.jobs, int) and cfg.jobs >= 1, "jobs must be >= 1")
    need(cfg.mode in ("exact", "modular"), "mode must be exact or modular")
    need(cfg.sampling in ("auto", "random", "symbolic"), "sampling must be auto, random or symbolic")
    need(cfg.budget is None or cfg.budget > 0, "budget must be positive")
    if cfg.mode == "modular":
        need(cfg.check in ("main1", "all"), "modular mode is only available for main1")
        need(isinstance(cfg.prime, int) and cfg.prime > 2 ** 40 and fmpz(cfg.prime).is_prime(),
             "prime must be a prime > 2^40")
    n = cfg.n if cfg.n is not None else 0
    m = cfg.m if cfg.m is not None else 0
    need(n + m < 5 or cfg.large, "instances with n + m >= 5 need --large")


def run_check(cfg: InstanceConfig, timings: bool = False) -> list[dict]:
    cfg_dict = cfg.to_dict()
    insts = plan(cfg)
    jobs = min(cfg.jobs, max(1, len(insts)))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(run_instance, cfg_dict, i, inst) for i, inst in enumerate(insts)]
            results = [f.result() for f in futs]
    else:
        results = [run_instance(cfg_dict, i, inst) for i, inst in enumerate(insts)]
    reports = []
    for res in results:
        reports.append({
            "check": cfg.check,
            "params": res["params"],
            "pass": bool(res["pass"]),
            "elapsed_ms": res["elapsed_ms"] if timings else 0,
            "witness": None if res["pass"] else (res.get("witness") or {"reason": "failed"}),
            "seed": cfg.seed,
            "mode": cfg.mode,
        })
    return reports


def run(check: str, config: dict | None = None, timings: bool = False) -> list[dict]:
    """Run one check (or all) with a config dict; raises ConfigError on invalid input."""
    config = dict(config or {})
    names = list(CHECK_INFO) if check == "all" else [check]
    if check == "all" and config.get("mode") == "modular":
        names = ["main1"]
    cfgs = []
    for name in names:
        try:
            cfg = InstanceConfig(check=name, **config)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
        validate(cfg)
        cfgs.append(cfg)
    out = []
    for cfg in cfgs:
        out.extend(run_check(cfg, timings))
    return out


def emit_report(reports: list[dict], fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(reports, indent=2, sort_keys=True)
    lines = [f"{'check':<22} {'result':<8} {'ms':>8}  witness"]
    for r in reports:
        status = "PASS" if r["pass"] else "FAIL"
        w = r["witness"]
        cls = "" if w is None else (w.get("failure_class") or next(iter(w), ""))
        lines.append(f"{r['check']:<22} {status:<8} {r['elapsed_ms']:>8}  {cls}")
    n_pass = sum(r["pass"] for r in reports)
    lines.append(f"{n_pass}/{len(reports)} passed")
    return "\n".join(lines)


def exit_code(reports: list[dict]) -> int:
    if all(r["pass"] for r in reports):
        return EXIT_OK
    resource = {"budget exceeded", "genericity exhausted", "instance too large"}
    if all(r["pass"] or (r["witness"] or {}).get("failure_class") in resource for r in reports):
        return EXIT_RESOURCE
    return EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cmd == "list":
        for name, desc in CHECK_INFO.items():
            print(f"{name:<22} {desc}")
        print(f"{'all':<22} every check above")
        return EXIT_OK
    try:
        config = load_config(args)
        reports = run(args.check, config, timings=args.timings)
    except ConfigError as exc:
        print(f"bdl: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(emit_report(reports, "json") + "\n")
    print(emit_report(reports, args.format))
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
