"""Command-line front end: verify, delay, sweep, trace.

Exit codes: 0 success, 1 verification failure, 2 configuration or usage error.
The default field prime can be set through HETCACHE_PRIME.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import analysis
from .channel import DEFAULT_PRIME, verify_plan
from .core import SystemConfig, format_decimal, format_rational, parse_rational
from .delivery import census
from .errors import ConfigError, HetCacheError
from .schemes import build_plan
from .sweep import grid_configs, run_sweep, to_csv

PRIME_ENV = "HETCACHE_PRIME"
DEFAULT_MAX_ROWS = 100_000


def default_prime() -> int:
    value = os.environ.get(PRIME_ENV)
    return int(value) if value else DEFAULT_PRIME


def parse_range(text: str) -> list[int]:
    """"5", "3-12", "1,4,6" or "" (empty)."""
    out: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def parse_gammas(text: str):
    if text.strip() == "all":
        return "all"
    return [parse_rational(p) for p in text.split(",") if p.strip()]


def load_scenario(path: str) -> tuple[SystemConfig, dict]:
    with open(path) as fh:
        data = json.load(fh)
    try:
        config = SystemConfig(int(data["K1"]), parse_rational(str(data["gamma1"])), int(data.get("K2", 0)),
                              parse_rational(str(data.get("gamma2", "0"))), int(data.get("L", 1)),
                              data.get("N"))
    except KeyError as exc:
        raise ConfigError(f"scenario is missing {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    extra = {"seed": int(data.get("seed", 0)), "scheme": data.get("scheme", "auto"),
             "demands": {int(k): int(v) for k, v in data["demands"].items()} if "demands" in data else None}
    return config, extra


def _error(exc: Exception) -> int:
    print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}, sort_keys=True), file=sys.stderr)
    return 2


def cmd_verify(args) -> int:
    try:
        config, extra = load_scenario(args.scenario)
        plan = build_plan(config, extra["demands"], extra["scheme"])
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        return _error(exc)
    formula = analysis.formula_delay(config)
    counts = census(plan)
    decode = verify_plan(plan, seed=extra["seed"], p=args.prime, payload=args.payload)
    ok = plan.measured_delay == formula and counts.complete and decode.success
    report = {
        "config": config.to_dict(),
        "scheme": plan.scheme,
        "variant": plan.meta.get("variant"),
        "S": plan.S,
        "transmissions": plan.slot_count(),
        "measured_delay": format_rational(plan.measured_delay),
        "formula_delay": format_rational(formula),
        "census": counts.summary(),
        "decode": decode.to_dict(),
        "ok": ok,
    }
    print(json.dumps(report, sort_keys=True, indent=2))
    return 0 if ok else 1


def cmd_delay(args) -> int:
    try:
        config = SystemConfig(args.K1, args.gamma1, args.K2, args.gamma2, args.L)
    except ConfigError as exc:
        return _error(exc)
    achievable = analysis.formula_delay(config)
    rows = {"achievable": achievable,
            "homogeneous_equivalent": analysis.equivalent_delay(config.K1, config.gamma1, config.K2,
                                                                config.gamma2, config.L)}
    if config.gamma2 == 0:
        rows["bound"] = analysis.lower_bound(config.K1, config.gamma1, config.K2, config.L)
        rows["gap"] = analysis.gap_ratio(config.K1, config.gamma1, config.K2, config.L)
    if args.json:
        print(json.dumps({k: format_rational(v) for k, v in rows.items()}, sort_keys=True))
        return 0
    width = max(map(len, rows))
    for name, value in rows.items():
        print(f"{name:<{width}}  {format_rational(value):>10}  {format_decimal(value)}")
    return 0


def cmd_sweep(args) -> int:
    try:
        configs = list(grid_configs(parse_range(args.K1), parse_gammas(args.gamma1), parse_range(args.K2),
                                    parse_gammas(args.gamma2), parse_range(args.L), args.gamma1_min))
    except (TypeError, ValueError) as exc:
        return _error(exc)
    if len(configs) > args.max_rows:
        return _error(ConfigError(f"sweep has {len(configs)} rows, cap is {args.max_rows}"))
    text = to_csv(run_sweep(configs, build=args.build, workers=args.workers))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_trace(args) -> int:
    try:
        config, extra = load_scenario(args.scenario)
        plan = build_plan(config, extra["demands"], extra["scheme"])
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        return _error(exc)
    header = {"config": config.to_dict(), "scheme": plan.scheme, "S": plan.S, "transmissions": plan.slot_count(),
              "phases": dict(zip((ph.name for ph in plan.phases), plan.phase_counts))}
    print(json.dumps(header, sort_keys=True))
    for i, tx in enumerate(plan):
        if args.limit is not None and i >= args.limit:
            break
        print(json.dumps({"index": i, **tx.to_record()}, sort_keys=True))
    return 0


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hetcache", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="build, count and decode a scenario")
    p.add_argument("scenario")
    p.add_argument("--prime", type=int, default=default_prime())
    p.add_argument("--payload", action="store_true", help="also decode random field payloads")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("delay", help="closed-form delay, bound and gap")
    p.add_argument("--K1", type=int, required=True)
    p.add_argument("--gamma1", type=_rational, required=True)
    p.add_argument("--K2", type=int, default=0)
    p.add_argument("--gamma2", type=_rational, default=Fraction(0))
    p.add_argument("--L", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_delay)

    p = sub.add_parser("sweep", help="CSV over a parameter grid")
    p.add_argument("--K1", default="1-8", help='e.g. "5", "3-12", "2,4"')
    p.add_argument("--gamma1", default="all", help='"all" or comma-separated rationals')
    p.add_argument("--gamma1-min", type=_rational, default=None)
    p.add_argument("--K2", default="0-8")
    p.add_argument("--gamma2", default="0", help='"all" or comma-separated rationals')
    p.add_argument("--L", default="1-4")
    p.add_argument("--build", action="store_true", help="construct plans and measure their delay")
    p.add_argument("--max-rows", type=int, default=DEFAULT_MAX_ROWS)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("trace", help="dump a scenario's transmissions as JSON lines")
    p.add_argument("scenario")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_trace)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        return _error(exc)
    except HetCacheError as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
