"""Curriculum learning toolkit bindings.

The compiled core exposes task spaces, curricula (domain randomization,
prioritized level replay, learning progress, learnability sampling, omni
filtering, sequential and annealing schedules), self-play opponent
curricula, the desk-scale environments, and the training runner.
"""

from ._core import (
    AgentCurriculum,
    CurriculaError,
    Curriculum,
    FictitiousSelfPlay,
    OpponentStore,
    PrioritizedFictitiousSelfPlay,
    SelfPlay,
    TaskEnv,
    TaskSpace,
    clipped_success,
    default_interestingness,
    lp_reweight,
    make_curriculum,
    make_env,
    normalized_return,
    omni_filter,
    parse_condition,
    run_training,
    sfl_distribution,
    value_l1_score,
)

__all__ = [
    "AgentCurriculum",
    "CurriculaError",
    "Curriculum",
    "FictitiousSelfPlay",
    "OpponentStore",
    "PrioritizedFictitiousSelfPlay",
    "SelfPlay",
    "TaskEnv",
    "TaskSpace",
    "clipped_success",
    "default_interestingness",
    "lp_reweight",
    "make_curriculum",
    "make_env",
    "normalized_return",
    "omni_filter",
    "parse_condition",
    "run_training",
    "sfl_distribution",
    "value_l1_score",
]
