"""Random-mutations global optimizer with quantum correlation measures."""

from ._core import (
    ConfigError,
    InvalidStateError,
    RmConfig,
    UndefinedMetricError,
    UsageError,
    bell_diagonal_state,
    benchmark,
    default_discord_config,
    default_hmin_config,
    discord,
    e05,
    e_hmin,
    ghz_state,
    grover_state,
    luo_discord_analytical,
    measurement_entropy,
    minimize,
    minimize_benchmark,
    mutual_information,
    random_pure_state,
    run_experiments,
    von_neumann_entropy,
)

__all__ = [
    "ConfigError",
    "InvalidStateError",
    "RmConfig",
    "UndefinedMetricError",
    "UsageError",
    "bell_diagonal_state",
    "benchmark",
    "default_discord_config",
    "default_hmin_config",
    "discord",
    "e05",
    "e_hmin",
    "ghz_state",
    "grover_state",
    "luo_discord_analytical",
    "measurement_entropy",
    "minimize",
    "minimize_benchmark",
    "mutual_information",
    "random_pure_state",
    "run_experiments",
    "von_neumann_entropy",
]
