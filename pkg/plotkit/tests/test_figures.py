import hashlib
import json
from pathlib import Path

import numpy as np
import pytest

from plotkit import FIGURE_KINDS, PlotDataError, load_batch, render_figure

SCENARIO_COUNT = 8  # baseline plus seven interventions


def dir_digest(path: Path) -> dict:
    return {
        p.name: hashlib.sha256(p.read_bytes()).hexdigest()
        for p in sorted(path.iterdir())
    }


def test_all_six_kinds_render(compare_dir, sweep_dir, tmp_path):
    for kind in FIGURE_KINDS:
        src = sweep_dir if kind == "isolation-sweep" else compare_dir
        out = tmp_path / f"{kind}.png"
        fig = render_figure(kind, src, out,
                            scenario="baseline" if kind == "scenario-panel"
                            else None)
        assert out.exists() and out.stat().st_size > 0, kind
        assert fig is not None


def test_rendering_is_read_only(compare_dir, tmp_path):
    before = dir_digest(compare_dir)
    for kind in ("infection-comparison", "economy-bars"):
        render_figure(kind, compare_dir, tmp_path / f"{kind}.png")
    assert dir_digest(compare_dir) == before


def test_infection_comparison_one_series_per_scenario(compare_dir, tmp_path):
    fig = render_figure("infection-comparison", compare_dir,
                        tmp_path / "i.png")
    ax = fig.axes[0]
    assert len(ax.lines) == SCENARIO_COUNT
    labels = {line.get_label() for line in ax.lines}
    assert "baseline" in labels and "lockdown" in labels


def test_death_comparison_series_count(compare_dir, tmp_path):
    fig = render_figure("death-comparison", compare_dir, tmp_path / "d.png")
    assert len(fig.axes[0].lines) == SCENARIO_COUNT


def test_baseline_panel_has_identically_zero_deaths(compare_dir, tmp_path):
    fig = render_figure("scenario-panel", compare_dir, tmp_path / "p.png",
                        scenario="baseline")
    epidemic_ax = fig.axes[0]
    dead = [line for line in epidemic_ax.lines if line.get_label() == "D"]
    assert len(dead) == 1
    assert float(np.abs(dead[0].get_ydata()).max()) == 0.0


def test_scenario_panel_requires_known_scenario(compare_dir, tmp_path):
    out = tmp_path / "nope.png"
    with pytest.raises(PlotDataError, match="no-such"):
        render_figure("scenario-panel", compare_dir, out,
                      scenario="no-such")
    assert not out.exists()
    with pytest.raises(PlotDataError, match="scenario id"):
        render_figure("scenario-panel", compare_dir, out)


def test_isolation_sweep_series(sweep_dir, tmp_path):
    fig = render_figure("isolation-sweep", sweep_dir, tmp_path / "s.png")
    infected_ax, wealth_ax = fig.axes
    assert len(infected_ax.lines) == 3  # adherence 0.4, 0.6, 0.8
    assert len(wealth_ax.lines) == 3


def test_isolation_sweep_needs_sweep_data(compare_dir, tmp_path):
    with pytest.raises(PlotDataError, match="partial-"):
        render_figure("isolation-sweep", compare_dir, tmp_path / "x.png")


def test_empty_input_dir_is_an_error(tmp_path):
    out = tmp_path / "fig.png"
    with pytest.raises(PlotDataError, match="aggregate"):
        render_figure("infection-comparison", tmp_path / "empty", out)
    assert not out.exists()


def test_unknown_kind_rejected(compare_dir, tmp_path):
    with pytest.raises(PlotDataError, match="unknown figure kind"):
        render_figure("pie-chart", compare_dir, tmp_path / "x.png")


def test_missing_column_is_named(compare_dir, tmp_path):
    clone = tmp_path / "broken"
    clone.mkdir()
    agg = (compare_dir / "aggregate.csv").read_text().splitlines()
    kept = [line for line in agg if ",I_H," not in line]
    (clone / "aggregate.csv").write_text("\n".join(kept) + "\n")
    (clone / "metrics.json").write_text(
        (compare_dir / "metrics.json").read_text()
    )
    with pytest.raises(PlotDataError, match="I_H"):
        render_figure("infection-comparison", clone, tmp_path / "x.png")


def test_malformed_metrics_is_named(compare_dir, tmp_path):
    clone = tmp_path / "broken2"
    clone.mkdir()
    (clone / "aggregate.csv").write_text(
        (compare_dir / "aggregate.csv").read_text()
    )
    metrics = json.loads((compare_dir / "metrics.json").read_text())
    del metrics["lockdown"]["delta_w"]["a3"]
    (clone / "metrics.json").write_text(json.dumps(metrics))
    with pytest.raises(PlotDataError, match="a3"):
        render_figure("economy-bars", clone, tmp_path / "x.png")


def test_same_inputs_same_shape(compare_dir, tmp_path):
    one = render_figure("economy-bars", compare_dir, tmp_path / "a.png")
    two = render_figure("economy-bars", compare_dir, tmp_path / "b.png")
    assert one.get_size_inches().tolist() == two.get_size_inches().tolist()
    assert len(one.axes[0].patches) == len(two.axes[0].patches)
    assert len(one.axes[0].patches) == 3 * (SCENARIO_COUNT - 1)


def test_scatter_has_three_groups(compare_dir, tmp_path):
    fig = render_figure("deaths-vs-gdp-scatter", compare_dir,
                        tmp_path / "sc.png")
    assert len(fig.axes[0].collections) == 3


def test_cli_renders_and_reports(compare_dir, tmp_path, capsys):
    from plotkit.cli import main
    out = tmp_path / "cli.png"
    assert main(["--figure", "infection-comparison", "--input",
                 str(compare_dir), "--out", str(out)]) == 0
    assert out.exists()
    assert main(["--figure", "isolation-sweep", "--input", str(compare_dir),
                 "--out", str(tmp_path / "bad.png")]) == 1
    assert "partial-" in capsys.readouterr().err
