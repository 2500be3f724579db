"""Command-line interface.

Three commands, all writing the same three files (raw.csv,
aggregate.csv, metrics.json) into --out:

  run       one scenario (the no-epidemic baseline is added automatically
            so wealth deltas are well defined)
  compare   several scenarios side by side with paired seeding
  sweep     the partial-isolation family over a range of adherence levels

Exit status is 0 on success and 1 on any validation or runtime failure;
messages go to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, build_parameters
from .output import export_results
from .params import ParameterError
from .runner import (
    DEFAULT_RUNS,
    MetricError,
    SimulationConfig,
    compute_metrics,
    run_scenarios,
)
from .scenarios import SCENARIO_IDS

BASELINE_ID = "baseline"


def _add_common(parser: argparse.ArgumentParser,
                param_override: bool = True) -> None:
    parser.add_argument("--runs", type=int, default=DEFAULT_RUNS,
                        help="independent executions per scenario")
    parser.add_argument("--days", type=int, default=60,
                        help="horizon in simulated days")
    parser.add_argument("--seed", type=int, default=1,
                        help="base seed; run k derives its own stream")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--config", default=None,
                        help="flat key=value parameter file")
    if param_override:
        parser.add_argument("--param", action="append", default=[],
                            metavar="KEY=VALUE",
                            help="override one parameter (repeatable)")
    parser.add_argument("--workers", type=int, default=None,
                        help="parallel worker processes (default: CPUs)")


def build_argparser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="epiecon",
        description="Agent-based epidemic and economy scenario simulator",
    )
    sub = top.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a single scenario")
    run_p.add_argument("--scenario", required=True, choices=SCENARIO_IDS)
    run_p.add_argument("--isolation-level", type=float, default=None,
                       help="partial-isolation adherence in [0, 1]")
    _add_common(run_p)

    cmp_p = sub.add_parser("compare", help="run several scenarios")
    cmp_p.add_argument("--scenarios", default="all",
                       help="'all' or a comma-separated list of ids")
    _add_common(cmp_p)

    sweep_p = sub.add_parser("sweep",
                             help="sweep the partial-isolation level")
    sweep_p.add_argument("--param", dest="sweep_param",
                         default="isolation-level",
                         help="swept parameter (isolation-level only)")
    sweep_p.add_argument("--values", default="0.3:0.9:0.1",
                         help="start:stop:step, inclusive")
    _add_common(sweep_p, param_override=False)
    return top


def _parse_values(spec: str) -> list[float]:
    try:
        start, stop, step_size = (float(v) for v in spec.split(":"))
    except ValueError as exc:
        raise ConfigError(f"--values expects start:stop:step, got {spec!r}") from exc
    if step_size <= 0 or stop < start:
        raise ConfigError("--values range must be increasing")
    count = int(round((stop - start) / step_size)) + 1
    values = [round(start + k * step_size, 10) for k in range(count)]
    return [v for v in values if v <= stop + 1e-9]


def _scenario_list(spec: str) -> list[str]:
    if spec == "all":
        return list(SCENARIO_IDS)
    ids = [part.strip() for part in spec.split(",") if part.strip()]
    for sid in ids:
        if sid not in SCENARIO_IDS:
            raise ConfigError(f"unknown scenario id: {sid!r}")
    return ids


def _execute(args) -> int:
    overrides = getattr(args, "param", None)
    params = build_parameters(args.config, overrides)
    if args.command == "sweep" and args.sweep_param != "isolation-level":
        raise ConfigError(
            f"unsupported sweep parameter {args.sweep_param!r}; "
            "only isolation-level is swept"
        )
    config = SimulationConfig(
        params=params,
        horizon=args.days * 24,
        runs=args.runs,
        base_seed=args.seed,
        workers=args.workers,
    )

    if args.command == "run":
        ids = [BASELINE_ID] if args.scenario == BASELINE_ID else (
            [BASELINE_ID, args.scenario]
        )
        levels = {args.scenario: args.isolation_level}
        batches = run_scenarios(config, ids, levels)
    elif args.command == "compare":
        ids = _scenario_list(args.scenarios)
        if BASELINE_ID not in ids:
            ids = [BASELINE_ID] + ids
        batches = run_scenarios(config, ids)
    else:
        levels = _parse_values(args.values)
        ids = [BASELINE_ID] + [f"partial-{v:g}" for v in levels]
        batches = run_scenarios(config, ids)

    metrics = compute_metrics(batches, BASELINE_ID)
    paths = export_results(batches, metrics, args.out)
    print(f"wrote {paths['raw']}, {paths['aggregate']}, {paths['metrics']}")
    return 0


def main(argv=None) -> int:
    args = build_argparser().parse_args(argv)
    try:
        return _execute(args)
    except (ConfigError, ParameterError, MetricError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
