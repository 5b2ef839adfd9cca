"""Parameter sweeps: configuration grids and one CSV row per configuration."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, Iterator

from . import analysis
from .core import SystemConfig, format_rational
from .errors import ConfigError
from .schemes import build_plan

HEADER = (
    "K1", "gamma1", "K2", "gamma2", "L", "regime", "status", "scheme", "S", "slots", "measured_delay",
    "formula_delay", "match", "lower_bound", "gap", "gap_limit", "equivalent_delay", "dof",
    "boost_vs_single_antenna", "dof_extra_antenna", "dof_unit_cache",
)


def integral_configs(K1_max: int = 8, K2_max: int = 8, L_max: int = 4, K1_min: int = 1,
                     K2_min: int = 0, L_min: int = 1) -> Iterator[SystemConfig]:
    """Every config with integer K1*gamma1 >= 1 and integer K2*gamma2 (possibly 0) below it in gamma."""
    for K1 in range(K1_min, K1_max + 1):
        for t1 in range(1, K1):
            g1 = Fraction(t1, K1)
            for K2 in range(K2_min, K2_max + 1):
                gammas2 = [Fraction(0)] + [Fraction(t2, K2) for t2 in range(1, K2) if Fraction(t2, K2) < g1]
                for g2 in gammas2:
                    for L in range(L_min, L_max + 1):
                        yield SystemConfig(K1, g1, K2, g2, L)


def grid_configs(K1s: Iterable[int], gammas1, K2s: Iterable[int], gammas2, Ls: Iterable[int],
                 gamma1_min: Fraction | None = None) -> Iterator[SystemConfig]:
    """Cartesian grid; "all" for a gamma list means every integral value for that group size.

    Combinations violating the config invariants are skipped.
    """
    K2s, Ls = list(K2s), list(Ls)
    for K1 in K1s:
        g1s = [Fraction(t, K1) for t in range(1, K1)] if gammas1 == "all" else gammas1
        for g1 in g1s:
            if gamma1_min is not None and g1 < gamma1_min:
                continue
            for K2 in K2s:
                g2s = [Fraction(0)] + [Fraction(t, K2) for t in range(1, K2)] if gammas2 == "all" else gammas2
                for g2 in g2s:
                    for L in Ls:
                        try:
                            yield SystemConfig(K1, g1, K2, g2, L)
                        except ConfigError:
                            continue


def resource_trade_columns(config: SystemConfig) -> tuple[Fraction | None, Fraction | None]:
    """DoF with one more antenna and no group-2 cache, against DoF with L antennas and K2*gamma2 = 1."""
    K1, g1, K2, L = config.K1, config.gamma1, config.K2, config.L
    a1 = K1 * (1 - g1)
    more_antennas = analysis.dof(analysis.delay_zero_cache_group(K1, g1, K2, L + 1), a1 + K2) if a1 + K2 else None
    unit_cache = None
    if K2 >= 1 and Fraction(1, K2) < g1:
        unit_cache = analysis.dof(analysis.delay_two_cache_groups(K1, g1, K2, Fraction(1, K2), L), a1 + K2 - 1)
    return more_antennas, unit_cache


def evaluate(config: SystemConfig, build: bool = True) -> dict:
    """Closed forms for `config`; with `build`, also construct the plan and count its slots."""
    K1, g1, K2, g2, L = config.K1, config.gamma1, config.K2, config.gamma2, config.L
    formula = analysis.formula_delay(config)
    row: dict = dict(config.to_dict())
    row.pop("N")
    if g2 == 0:
        row["regime"] = "large" if analysis.large_regime(K1, g1, K2, L) else "small"
        row["lower_bound"] = analysis.lower_bound(K1, g1, K2, L)
        row["gap"] = analysis.gap_ratio(K1, g1, K2, L)
        row["gap_limit"] = analysis.gap_limit(K1, g1, K2, L)
        row["boost_vs_single_antenna"] = analysis.delay_single_antenna(K1, g1, K2) / formula
    else:
        row["regime"] = "balanced" if config.T1 >= K2 * (1 - g2) / (L - 1 + K2 * g2) else "residual"
    row["formula_delay"] = formula
    row["equivalent_delay"] = analysis.equivalent_delay(K1, g1, K2, g2, L)
    row["dof"] = analysis.dof(formula, analysis.served_load(K1, g1, K2, g2))
    row["dof_extra_antenna"], row["dof_unit_cache"] = resource_trade_columns(config)
    row["status"] = "formula-only"
    if build:
        try:
            plan = build_plan(config)
        except ConfigError as exc:
            row["status"] = f"unsupported: {type(exc).__name__}"
        else:
            measured = plan.measured_delay
            row.update(status="ok", scheme=plan.meta.get("variant", plan.scheme), S=plan.S,
                       slots=plan.slot_count(), measured_delay=measured, match=measured == formula)
    return row


def format_row(row: dict) -> list[str]:
    out = []
    for key in HEADER:
        v = row.get(key)
        if v is None:
            out.append("")
        elif isinstance(v, bool):
            out.append(str(v).lower())
        elif isinstance(v, Fraction):
            out.append(format_rational(v))
        else:
            out.append(str(v))
    return out


def run_sweep(configs: Iterable[SystemConfig], build: bool = True, workers: int = 1) -> list[dict]:
    configs = list(configs)
    if workers <= 1:
        return [evaluate(c, build) for c in configs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda c: evaluate(c, build), configs))


def to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow(format_row(row))
    return buf.getvalue()
