"""Dice mechanics, logistic task resolution and skill estimation.

Exact distributions for the classic die mechanics, the one-to-four
parameter logistic task-resolution models, odds-scale evidence
combination, CDF comparison tooling, seeded sampling with Elo updates,
and maximum-likelihood recovery of skill logits from outcome logs.
"""

from .compare import (
    ComparisonReport,
    LogisticParams,
    discrete_vs_logistic,
    figure_data,
    match_normal_to_logistic,
    match_uniform_to_logistic,
    moment_match_logistic,
    normal_vs_logistic,
    sup_distance,
    uniform_vs_logistic,
)
from .dice import (
    BinomialPool,
    DiscreteDist,
    GeneralPool,
    MaxPool,
    Mechanic,
    StepDie,
    SumRollOver,
    UniformRollOver,
    UniformRollUnder,
    constant,
    convolve,
    die,
    dist_to_csv,
    outcome_distribution,
    success_probability,
)
from .estimate import (
    FitResult,
    OutcomeRecord,
    RaschEstimator,
    fit_rasch,
    gradient,
    log_likelihood,
    read_outcome_csv,
)
from .evidence import (
    EvidenceGrade,
    jeffreys_grade,
    update,
    update_reliable,
    weight_of_evidence,
)
from .logistic import (
    FourPL,
    Logit,
    Odds,
    Probability,
    logistic_cdf,
    logit,
    normal_cdf,
    odds_to_prob,
    prob_to_odds,
    rasch_ratio,
    sigmoid,
    uniform_cdf,
)
from .resolve import (
    CheckResult,
    Rating,
    SplitMix64,
    elo_expected,
    elo_update,
    opposed,
    opposed_logit,
    resolve_mechanic,
    resolve_model,
    simulate_count,
)

__version__ = "0.1.0"

__all__ = [
    "BinomialPool",
    "CheckResult",
    "ComparisonReport",
    "DiscreteDist",
    "EvidenceGrade",
    "FitResult",
    "FourPL",
    "GeneralPool",
    "LogisticParams",
    "Logit",
    "MaxPool",
    "Mechanic",
    "Odds",
    "OutcomeRecord",
    "Probability",
    "RaschEstimator",
    "Rating",
    "SplitMix64",
    "StepDie",
    "SumRollOver",
    "UniformRollOver",
    "UniformRollUnder",
    "constant",
    "convolve",
    "die",
    "discrete_vs_logistic",
    "dist_to_csv",
    "elo_expected",
    "elo_update",
    "figure_data",
    "fit_rasch",
    "gradient",
    "jeffreys_grade",
    "log_likelihood",
    "logistic_cdf",
    "logit",
    "match_normal_to_logistic",
    "match_uniform_to_logistic",
    "moment_match_logistic",
    "normal_cdf",
    "normal_vs_logistic",
    "odds_to_prob",
    "opposed",
    "opposed_logit",
    "outcome_distribution",
    "prob_to_odds",
    "rasch_ratio",
    "read_outcome_csv",
    "resolve_mechanic",
    "resolve_model",
    "sigmoid",
    "simulate_count",
    "success_probability",
    "sup_distance",
    "uniform_cdf",
    "uniform_vs_logistic",
    "update",
    "update_reliable",
    "weight_of_evidence",
]
