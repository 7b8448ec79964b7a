from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from hybrid_qubit_sim.core.config import settings
from hybrid_qubit_sim.core.errors import ConfigError, OperatorError, SimulationError
from hybrid_qubit_sim.scenarios import (
    list_scenarios,
    load_config,
    parse_overrides,
    run_scenario,
    write_artifacts,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SIMULATION = 3


def cmd_run(args) -> int:
    try:
        overrides = parse_overrides(args.set or [])
        for key in ("seed", "out", "format"):
            value = getattr(args, key)
            if value is not None:
                overrides[key] = value
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"config error [{exc.key}]: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        result = run_scenario(cfg)
    except ConfigError as exc:
        print(f"config error [{exc.key}]: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OperatorError as exc:
        logger.error("scenario %s rejected its inputs: %s", cfg.scenario, exc)
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationError as exc:
        logger.error("scenario %s failed: %s", cfg.scenario, exc)
        print(f"simulation error: {exc}", file=sys.stderr)
        return EXIT_SIMULATION

    for line in result.lines:
        print(line)
    out_dir = cfg.out or settings.output_dir
    for path in write_artifacts(result, out_dir, Path(args.config).stem, cfg.format):
        print(f"wrote {path}")
    return EXIT_OK


def cmd_list(args) -> int:
    print(list_scenarios())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hqs", description="Hybrid topological/flux qubit simulator")
    sub = p.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="Run a scenario config and write JSON/CSV results")
    r.add_argument("config", help="scenario YAML file")
    r.add_argument("--seed", type=int, default=None, help="64-bit measurement seed")
    r.add_argument("--out", default=None, help=f"output directory (default {settings.output_dir})")
    r.add_argument("--format", choices=("json", "csv", "both"), default=None)
    r.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override a config key; repeatable, values parsed as YAML",
    )
    r.set_defaults(fn=cmd_run)

    ls = sub.add_parser("list", help="List scenarios, required keys and defaults")
    ls.set_defaults(fn=cmd_list)

    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
