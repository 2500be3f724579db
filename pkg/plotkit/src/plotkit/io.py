"""Readers for the simulator's result-directory schemas.

The plotting package is deliberately decoupled from the engine: it only
understands the two files a batch directory contains,

    aggregate.csv   scenario,day,variable,mean,std
    metrics.json    {scenario: {infection_peak, day_of_peak,
                                final_deaths, delta_w: {a1, a3, a4}}}

and every shape problem is reported with the offending file and field.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

AGGREGATE_NAME = "aggregate.csv"
METRICS_NAME = "metrics.json"

EPIDEMIC_VARIABLES = ("S", "I", "I_A", "I_H", "I_S", "R", "D")
WEALTH_VARIABLES = ("W_A1", "W_A3", "W_A4")
ALL_VARIABLES = EPIDEMIC_VARIABLES + WEALTH_VARIABLES

METRIC_KEYS = ("infection_peak", "day_of_peak", "final_deaths", "delta_w")
DELTA_GROUPS = ("a1", "a3", "a4")


class PlotDataError(ValueError):
    """Input directory is missing or malformed; the message names the
    offending file or field."""


class BatchData:
    """One result directory: per-scenario mean/std series plus metrics."""

    def __init__(self, series: dict, metrics: dict, source: Path):
        self.series = series        # scenario -> variable -> (days, 2)
        self.metrics = metrics
        self.source = source

    @property
    def scenarios(self) -> list[str]:
        return list(self.series)

    def days(self) -> int:
        first = next(iter(self.series.values()))
        return len(next(iter(first.values())))

    def mean(self, scenario: str, variable: str) -> np.ndarray:
        return self.series[scenario][variable][:, 0]

    def std(self, scenario: str, variable: str) -> np.ndarray:
        return self.series[scenario][variable][:, 1]

    def require_scenario(self, scenario: str) -> None:
        if scenario not in self.series:
            raise PlotDataError(
                f"{self.source / AGGREGATE_NAME}: unknown scenario "
                f"{scenario!r}; available: {', '.join(sorted(self.series))}"
            )

    def sweep_scenarios(self) -> list[tuple[float, str]]:
        """The partial-isolation family, sorted by adherence level."""
        found = []
        for sid in self.series:
            if sid.startswith("partial-"):
                try:
                    found.append((float(sid.split("-", 1)[1]), sid))
                except ValueError:
                    continue
        return sorted(found)


def load_batch(input_dir) -> BatchData:
    """Load and validate a result directory."""
    root = Path(input_dir)
    agg_path = root / AGGREGATE_NAME
    metrics_path = root / METRICS_NAME
    if not agg_path.exists():
        raise PlotDataError(f"aggregate CSV not found: {agg_path}")
    if not metrics_path.exists():
        raise PlotDataError(f"metrics JSON not found: {metrics_path}")

    rows: dict[str, dict[str, dict[int, tuple[float, float]]]] = {}
    with agg_path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["scenario", "day", "variable", "mean", "std"]:
            raise PlotDataError(
                f"{agg_path}: unexpected header {header!r}"
            )
        for lineno, rec in enumerate(reader, start=2):
            if len(rec) != 5:
                raise PlotDataError(f"{agg_path}:{lineno}: expected 5 fields")
            sid, day, var, mean, std = rec
            try:
                rows.setdefault(sid, {}).setdefault(var, {})[int(day)] = (
                    float(mean), float(std),
                )
            except ValueError as exc:
                raise PlotDataError(f"{agg_path}:{lineno}: {exc}") from exc

    series: dict[str, dict[str, np.ndarray]] = {}
    for sid, by_var in rows.items():
        missing = [v for v in ALL_VARIABLES if v not in by_var]
        if missing:
            raise PlotDataError(
                f"{agg_path}: scenario {sid!r} is missing variable "
                f"{missing[0]!r}"
            )
        series[sid] = {}
        for var, cells in by_var.items():
            days = max(cells)
            arr = np.zeros((days, 2))
            for day, pair in cells.items():
                arr[day - 1] = pair
            series[sid][var] = arr

    try:
        metrics = json.loads(metrics_path.read_text())
    except json.JSONDecodeError as exc:
        raise PlotDataError(f"{metrics_path}: invalid JSON: {exc}") from exc
    for sid, entry in metrics.items():
        for key in METRIC_KEYS:
            if key not in entry:
                raise PlotDataError(
                    f"{metrics_path}: scenario {sid!r} is missing {key!r}"
                )
        for group in DELTA_GROUPS:
            if group not in entry["delta_w"]:
                raise PlotDataError(
                    f"{metrics_path}: scenario {sid!r} delta_w is missing "
                    f"{group!r}"
                )
    return BatchData(series, metrics, root)
