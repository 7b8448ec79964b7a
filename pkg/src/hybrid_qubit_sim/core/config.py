from __future__ import annotations

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="HYBRID_QUBIT_", extra="ignore")

    # Where `hqs run` writes JSON/CSV artifacts unless --out is given.
    output_dir: str = "out"

    # Propagator convergence control.
    solver_tol: float = 1e-8
    solver_samples: int = 64
    solver_max_refinements: int = 14
    solver_scheme: str = "magnus4"  # magnus4|midpoint

    # Duration of the smooth q_ext ramp used by the transfer protocols; 0 = sudden.
    switch_ns: float = 2.0

    workers: int = 4
    log_level: str = "INFO"

    # Reporting thresholds only; dynamics stay closed-system.
    coherence_budget_ns: float = 2000.0
    purity_tol: float = 1e-6


@lru_cache
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
