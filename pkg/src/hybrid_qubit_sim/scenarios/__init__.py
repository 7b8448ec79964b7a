from .catalog import CATALOG, ScenarioSpec, list_scenarios
from .config import ScenarioConfig, build_config, flatten, load_config, parse_overrides
from .runner import ScenarioResult, run_scenario, write_artifacts
from .schema import ResultRecord, RunOutcome

__all__ = [
    "CATALOG",
    "ResultRecord",
    "RunOutcome",
    "ScenarioConfig",
    "ScenarioResult",
    "ScenarioSpec",
    "build_config",
    "flatten",
    "list_scenarios",
    "load_config",
    "parse_overrides",
    "run_scenario",
    "write_artifacts",
]
