"""Greedy sparse recovery toolkit.

Pursuit algorithms (OMP, K-fold OMP, hybrid selection), CoSaMP and
iterative-hard-thresholding baselines, exact restricted-isometry
certification with the matching recovery conditions, reconstruction
error-bound constants, and a reproducible benchmark harness.
"""

from .baselines import BaselineConfig, cosamp, iht
from .bench import (
    AlgorithmSpec,
    ExperimentConfig,
    SummaryRow,
    TrialRecord,
    parse_algorithm,
    parse_config,
    run_decay_sweep,
    run_recovery_sweep,
    summarize,
    write_run_outputs,
)
from .bounds import (
    BoundRow,
    BoundTable,
    DeltaModel,
    compare_omp_komp,
    komp_error_bound,
    komp_error_constant,
    komp_truncated_error_bound,
    omp_error_bound,
    omp_error_constant,
)
from .errors import (
    BoundUndefined,
    BudgetExceeded,
    Diverged,
    GreedycsError,
    OrderOutOfRange,
    SingularProjection,
    UnstableWidth,
)
from .linalg import gram_extreme_eigenvalues, least_squares, top_k_indices
from .model import (
    MeasurementMatrix,
    NoiseSpec,
    best_t_term,
    decay_tail_norm,
    gen_decaying_signal,
    gen_gaussian_matrix,
    gen_sparse_gaussian_signal,
    measure,
    top_k_norm,
)
from .plotting import emit_bound_plot, emit_plot
from .pursuit import (
    PursuitResult,
    PursuitState,
    SelectionRule,
    hybrid_omp,
    komp,
    omp,
    truncate_result,
)
from .rip import (
    RipReport,
    exact_report,
    komp_exact_recovery_condition,
    omp_exact_recovery_condition,
    rip_constant_exact,
    rip_constant_lower_bound,
    verify_growth_law,
)

__version__ = "0.1.0"

__all__ = [
    "AlgorithmSpec", "BaselineConfig", "BoundRow", "BoundTable",
    "BoundUndefined", "BudgetExceeded", "DeltaModel", "Diverged",
    "ExperimentConfig", "GreedycsError", "MeasurementMatrix", "NoiseSpec",
    "OrderOutOfRange", "PursuitResult", "PursuitState", "RipReport",
    "SelectionRule", "SingularProjection", "SummaryRow", "TrialRecord",
    "UnstableWidth", "best_t_term", "compare_omp_komp", "cosamp",
    "decay_tail_norm", "emit_bound_plot", "emit_plot", "exact_report",
    "gen_decaying_signal", "gen_gaussian_matrix",
    "gen_sparse_gaussian_signal", "gram_extreme_eigenvalues", "hybrid_omp",
    "iht", "komp", "komp_error_bound", "komp_error_constant",
    "komp_exact_recovery_condition", "komp_truncated_error_bound",
    "least_squares", "measure", "omp", "omp_error_bound",
    "omp_error_constant", "omp_exact_recovery_condition", "parse_algorithm",
    "parse_config", "rip_constant_exact", "rip_constant_lower_bound",
    "run_decay_sweep", "run_recovery_sweep", "summarize", "top_k_indices",
    "top_k_norm", "truncate_result", "verify_growth_law",
    "write_run_outputs",
]
