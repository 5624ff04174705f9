"""Team ratings, pairwise comparison rankings and selection experiments."""

from ._powerwise import (
    ComputationError,
    Season,
    ValidationError,
    compare,
    kendall_tau,
    load_season,
    parse_games,
    perturb,
    powerwise,
    rank,
    regression,
    rpi,
    run_cli,
    select,
    solve,
)

__all__ = [
    "ComputationError",
    "Season",
    "ValidationError",
    "compare",
    "kendall_tau",
    "load_season",
    "parse_games",
    "perturb",
    "powerwise",
    "rank",
    "regression",
    "rpi",
    "run_cli",
    "select",
    "solve",
]
