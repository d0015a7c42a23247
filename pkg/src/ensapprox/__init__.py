"""Constructive sigmoidal product networks and ensemble error analysis."""

from .activations import (
    ActivationSpec,
    DegenerateActivationError,
    LimitProbeResult,
    SigmoidalCheck,
    TaylorCoeffs,
    check_sigmoidal_bounded,
    discriminatory_limit_probe,
    eval_activation,
    taylor_coeffs,
)
from .datasets import Dataset, gen_synthetic, load_csv_dataset
from .deeptree import (
    DeepNetwork,
    UnitCountRow,
    build_deep_monomial_network,
    eval_deep,
    unit_count_comparison,
)
from .ensemble import (
    ErrorBoundReport,
    LogisticUnit,
    MonteCarloResult,
    StackedCombiner,
    error_bound_report,
    exact_error_tail,
    hoeffding_bound,
    majority_vote,
    simulate_independent_ensemble,
    train_logistic_unit,
    train_stacked_combiner,
)
from .experiment import (
    ExperimentConfig,
    ExperimentReport,
    emit_report,
    load_config,
    parse_report,
    run_experiment,
    split_indices,
)
from .metrics import MetricsReport, RankedTable, compute_metrics, rank_methods
from .multilinear import MultilinearPoly, cube_points, eval_poly, interpolate_multilinear
from .shallow import (
    RankCertificate,
    ShallowNetwork,
    build_function_network,
    build_monomial_network,
    eval_shallow,
    monomial_sup_error,
    rank_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "ActivationSpec",
    "DegenerateActivationError",
    "LimitProbeResult",
    "SigmoidalCheck",
    "TaylorCoeffs",
    "check_sigmoidal_bounded",
    "discriminatory_limit_probe",
    "eval_activation",
    "taylor_coeffs",
    "Dataset",
    "gen_synthetic",
    "load_csv_dataset",
    "DeepNetwork",
    "UnitCountRow",
    "build_deep_monomial_network",
    "eval_deep",
    "unit_count_comparison",
    "ErrorBoundReport",
    "LogisticUnit",
    "MonteCarloResult",
    "StackedCombiner",
    "error_bound_report",
    "exact_error_tail",
    "hoeffding_bound",
    "majority_vote",
    "simulate_independent_ensemble",
    "train_logistic_unit",
    "train_stacked_combiner",
    "ExperimentConfig",
    "ExperimentReport",
    "emit_report",
    "load_config",
    "parse_report",
    "run_experiment",
    "split_indices",
    "MetricsReport",
    "RankedTable",
    "compute_metrics",
    "rank_methods",
    "MultilinearPoly",
    "cube_points",
    "eval_poly",
    "interpolate_multilinear",
    "RankCertificate",
    "ShallowNetwork",
    "build_function_network",
    "build_monomial_network",
    "eval_shallow",
    "monomial_sup_error",
    "rank_certificate",
]
