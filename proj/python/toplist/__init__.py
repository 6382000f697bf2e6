"""Consistent evaluation of probabilistic top-k list predictions."""

from toplist._core import (
    Categorical,
    ClassUniverse,
    EvalCase,
    EvalFile,
    ParseError,
    PredictionKind,
    ScoringRule,
    TopList,
    brier_rule,
    expected_score,
    is_calibrated,
    is_valid,
    largest_valid_sublist,
    log_rule,
    mean_score,
    metrics,
    mode,
    numbered_universe,
    pad,
    padded_brier,
    padded_log,
    padded_score,
    parse_eval_file,
    parse_eval_string,
    penalized_score,
    point_mass,
    proxy_probability,
    serialize_eval_file,
    true_top_list,
    true_top_lists,
    verify,
)

__all__ = [
    "Categorical",
    "ClassUniverse",
    "EvalCase",
    "EvalFile",
    "ParseError",
    "PredictionKind",
    "ScoringRule",
    "TopList",
    "brier_rule",
    "expected_score",
    "is_calibrated",
    "is_valid",
    "largest_valid_sublist",
    "log_rule",
    "mean_score",
    "metrics",
    "mode",
    "numbered_universe",
    "pad",
    "padded_brier",
    "padded_log",
    "padded_score",
    "parse_eval_file",
    "parse_eval_string",
    "penalized_score",
    "point_mass",
    "proxy_probability",
    "serialize_eval_file",
    "true_top_list",
    "true_top_lists",
    "verify",
]
