"""Successive projection algorithm (SPA) and robust SPA for separable NMF.

Given a nonnegative matrix ``X`` these algorithms pick ``r`` column indices
``K`` such that ``X ~ X[:, K] @ H`` with ``H >= 0``.  Robust SPA examines
several diversified candidates per step and keeps the one that reduces the
residual the most, which makes it resistant to outlier columns.
"""
from .exceptions import ContractViolation, DegenerateDirection, MatrixFormatError
from .extraction import ExtractionResult, extract, rspa_extract, spa_extract
from .io import l1_normalize_columns, load_indices, load_matrix, save_indices, save_matrix
from .linalg import ConditioningReport, column_norms, conditioning, rank1_update
from .nnls import NnlsSolution, nnls_solve, relative_error
from .selection import (
    DiversificationState,
    RspaParams,
    SelectionOutcome,
    alpha_star,
    diversify_select,
    residual_score,
)
from .synth import (
    SweepConfig,
    SweepResult,
    SyntheticInstance,
    generate_instance,
    recovery_rate,
    run_sweep,
)

__version__ = "0.1.0"
