"""File output: raw per-run CSV, aggregate CSV, metrics JSON.

Schemas are part of the public interface and consumed by the plotting
package, so they are frozen here:

raw.csv        scenario,run,day,S,I,I_A,I_H,I_S,R,D,W_A1,W_A3,W_A4
aggregate.csv  scenario,day,variable,mean,std
metrics.json   {scenario: {infection_peak, day_of_peak, final_deaths,
                           delta_w: {a1, a3, a4}}}

All floating-point values are written with six decimal places; the run
pipeline quantizes daily series to the same precision, so exporting and
re-reading a batch loses nothing and identical inputs reproduce
identical bytes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .core import RESPONSE_COLUMNS
from .runner import BatchResult

RAW_NAME = "raw.csv"
AGGREGATE_NAME = "aggregate.csv"
METRICS_NAME = "metrics.json"

RAW_HEADER = "scenario,run,day," + ",".join(RESPONSE_COLUMNS)
AGGREGATE_HEADER = "scenario,day,variable,mean,std"


class OutputError(OSError):
    """I/O failure surfaced with the offending path."""


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def write_raw_csv(batches: dict[str, BatchResult], path) -> Path:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            fh.write(RAW_HEADER + "\n")
            for sid, batch in batches.items():
                runs, days, _ = batch.daily.shape
                for r in range(runs):
                    for d in range(days):
                        row = batch.daily[r, d]
                        fh.write(
                            f"{sid},{r},{d + 1},"
                            + ",".join(_fmt(v) for v in row)
                            + "\n"
                        )
    except OSError as exc:
        raise OutputError(f"cannot write raw CSV at {path}: {exc}") from exc
    return path


def write_aggregate_csv(batches: dict[str, BatchResult], path) -> Path:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            fh.write(AGGREGATE_HEADER + "\n")
            for sid, batch in batches.items():
                mean = batch.mean()
                std = batch.std()
                for d in range(batch.days):
                    for v, name in enumerate(RESPONSE_COLUMNS):
                        fh.write(
                            f"{sid},{d + 1},{name},"
                            f"{_fmt(mean[d, v])},{_fmt(std[d, v])}\n"
                        )
    except OSError as exc:
        raise OutputError(
            f"cannot write aggregate CSV at {path}: {exc}"
        ) from exc
    return path


def write_metrics_json(metrics: dict[str, dict], path) -> Path:
    path = Path(path)
    try:
        with path.open("w") as fh:
            json.dump(metrics, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OutputError(f"cannot write metrics at {path}: {exc}") from exc
    return path


def export_results(batches: dict[str, BatchResult], metrics: dict[str, dict],
                   out_dir) -> dict[str, Path]:
    """Write the three result files into a directory, creating it if
    needed. Returns the paths keyed by kind."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create output dir {out}: {exc}") from exc
    return {
        "raw": write_raw_csv(batches, out / RAW_NAME),
        "aggregate": write_aggregate_csv(batches, out / AGGREGATE_NAME),
        "metrics": write_metrics_json(metrics, out / METRICS_NAME),
    }


def read_raw_csv(path) -> dict[str, np.ndarray]:
    """Parse a raw CSV back into per-scenario (runs, days, 10) arrays."""
    path = Path(path)
    rows: dict[str, dict[tuple[int, int], list[float]]] = {}
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if ",".join(header) != RAW_HEADER:
            raise OutputError(f"unexpected raw CSV header in {path}")
        for rec in reader:
            sid, run, day = rec[0], int(rec[1]), int(rec[2])
            rows.setdefault(sid, {})[(run, day)] = [float(v) for v in rec[3:]]
    out: dict[str, np.ndarray] = {}
    for sid, cells in rows.items():
        runs = 1 + max(k[0] for k in cells)
        days = max(k[1] for k in cells)
        arr = np.zeros((runs, days, len(RESPONSE_COLUMNS)))
        for (run, day), values in cells.items():
            arr[run, day - 1] = values
        out[sid] = arr
    return out


def read_aggregate_csv(path) -> dict[str, dict[str, np.ndarray]]:
    """Parse an aggregate CSV into {scenario: {variable: (days, 2)}} with
    mean in column 0 and std in column 1."""
    path = Path(path)
    rows: dict[str, dict[str, dict[int, tuple[float, float]]]] = {}
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if ",".join(header) != AGGREGATE_HEADER:
            raise OutputError(f"unexpected aggregate CSV header in {path}")
        for sid, day, var, mean, std in reader:
            rows.setdefault(sid, {}).setdefault(var, {})[int(day)] = (
                float(mean), float(std),
            )
    out: dict[str, dict[str, np.ndarray]] = {}
    for sid, by_var in rows.items():
        out[sid] = {}
        for var, cells in by_var.items():
            days = max(cells)
            arr = np.zeros((days, 2))
            for day, (mean, std) in cells.items():
                arr[day - 1] = (mean, std)
            out[sid][var] = arr
    return out


def read_metrics_json(path) -> dict[str, dict]:
    with Path(path).open() as fh:
        return json.load(fh)
