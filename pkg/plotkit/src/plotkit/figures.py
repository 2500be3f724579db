"""The six figure kinds rendered from a result directory.

Every builder takes loaded batch data and returns a matplotlib Figure;
``render_figure`` wires name -> builder, writes the image, and never
touches the input files. Variance bands are drawn as mean +/- one
standard deviation.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .io import (  # noqa: E402
    DELTA_GROUPS,
    EPIDEMIC_VARIABLES,
    BatchData,
    PlotDataError,
    load_batch,
)

FIGURE_KINDS = (
    "scenario-panel",
    "infection-comparison",
    "death-comparison",
    "economy-bars",
    "deaths-vs-gdp-scatter",
    "isolation-sweep",
)

GROUP_LABELS = {"a1": "people", "a3": "businesses", "a4": "government"}


def _days_axis(batch: BatchData):
    return range(1, batch.days() + 1)


def _banded(ax, days, mean, std, label):
    line, = ax.plot(days, mean, label=label, linewidth=1.4)
    ax.fill_between(days, mean - std, mean + std,
                    color=line.get_color(), alpha=0.18, linewidth=0)


def scenario_panel(batch: BatchData, scenario: str):
    batch.require_scenario(scenario)
    days = _days_axis(batch)
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4.2))
    for var in EPIDEMIC_VARIABLES:
        _banded(left, days, batch.mean(scenario, var),
                batch.std(scenario, var), var)
    left.set_title(f"{scenario}: epidemic state")
    left.set_xlabel("day")
    left.set_ylabel("population share")
    left.legend(fontsize=7, ncol=2)
    for var, label in (("W_A1", "people"), ("W_A3", "businesses"),
                       ("W_A4", "government")):
        _banded(right, days, batch.mean(scenario, var),
                batch.std(scenario, var), label)
    right.set_title(f"{scenario}: wealth shares")
    right.set_xlabel("day")
    right.set_ylabel("share of total wealth")
    right.legend(fontsize=8)
    fig.tight_layout()
    return fig


def _comparison(batch: BatchData, variable: str, title: str, ylabel: str):
    days = _days_axis(batch)
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for sid in batch.scenarios:
        ax.plot(days, batch.mean(sid, variable), label=sid, linewidth=1.4)
    ax.set_title(title)
    ax.set_xlabel("day")
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def infection_comparison(batch: BatchData):
    return _comparison(batch, "I", "Infected share by scenario",
                       "infected share")


def death_comparison(batch: BatchData):
    return _comparison(batch, "D", "Dead share by scenario", "dead share")


def economy_bars(batch: BatchData):
    scenarios = [s for s in batch.metrics if s != "baseline"]
    if not scenarios:
        raise PlotDataError(
            f"{batch.source}: metrics contain no non-baseline scenarios"
        )
    fig, ax = plt.subplots(figsize=(9, 4.5))
    width = 0.27
    for k, group in enumerate(DELTA_GROUPS):
        values = [batch.metrics[s]["delta_w"][group] for s in scenarios]
        offsets = [i + (k - 1) * width for i in range(len(scenarios))]
        ax.bar(offsets, values, width=width, label=GROUP_LABELS[group])
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xticks(range(len(scenarios)))
    ax.set_xticklabels(scenarios, rotation=25, ha="right", fontsize=8)
    ax.set_ylabel("wealth change vs baseline")
    ax.set_title("Final wealth deltas by agent group")
    ax.legend()
    fig.tight_layout()
    return fig


def deaths_vs_gdp_scatter(batch: BatchData):
    scenarios = [s for s in batch.metrics if s != "baseline"]
    if not scenarios:
        raise PlotDataError(
            f"{batch.source}: metrics contain no non-baseline scenarios"
        )
    fig, ax = plt.subplots(figsize=(7, 5))
    for group in DELTA_GROUPS:
        xs = [batch.metrics[s]["final_deaths"] for s in scenarios]
        ys = [batch.metrics[s]["delta_w"][group] for s in scenarios]
        ax.scatter(xs, ys, label=GROUP_LABELS[group], s=36)
    for s in scenarios:
        ax.annotate(s, (batch.metrics[s]["final_deaths"],
                        batch.metrics[s]["delta_w"]["a3"]),
                    fontsize=6, alpha=0.8)
    ax.set_xlabel("final dead share")
    ax.set_ylabel("wealth change vs baseline")
    ax.set_title("Deaths versus wealth outcome")
    ax.legend()
    fig.tight_layout()
    return fig


def isolation_sweep(batch: BatchData):
    family = batch.sweep_scenarios()
    if not family:
        raise PlotDataError(
            f"{batch.source}: no partial-<level> scenarios in the input; "
            "a sweep batch is required for this figure"
        )
    days = _days_axis(batch)
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4.2))
    for level, sid in family:
        left.plot(days, batch.mean(sid, "I"), label=f"adherence {level:g}")
        right.plot(days, batch.mean(sid, "W_A3"), label=f"adherence {level:g}")
    left.set_title("Infected share by isolation adherence")
    left.set_xlabel("day")
    left.set_ylabel("infected share")
    left.legend(fontsize=8)
    right.set_title("Business wealth by isolation adherence")
    right.set_xlabel("day")
    right.set_ylabel("share of total wealth")
    right.legend(fontsize=8)
    fig.tight_layout()
    return fig


def render_figure(kind: str, input_dir, out_path, scenario: str | None = None):
    """Render one figure kind from a result directory and write it to
    ``out_path``. Returns the Figure (callers may inspect it; the file is
    already saved). The input directory is only ever read."""
    if kind not in FIGURE_KINDS:
        raise PlotDataError(
            f"unknown figure kind {kind!r}; expected one of "
            + ", ".join(FIGURE_KINDS)
        )
    batch = load_batch(input_dir)
    if kind == "scenario-panel":
        if scenario is None:
            raise PlotDataError("scenario-panel needs a scenario id")
        fig = scenario_panel(batch, scenario)
    elif kind == "infection-comparison":
        fig = infection_comparison(batch)
    elif kind == "death-comparison":
        fig = death_comparison(batch)
    elif kind == "economy-bars":
        fig = economy_bars(batch)
    elif kind == "deaths-vs-gdp-scatter":
        fig = deaths_vs_gdp_scatter(batch)
    else:
        fig = isolation_sweep(batch)
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out)
    return fig
