"""Greedy column extraction: SPA and robust SPA.

Both algorithms alternate a selection step, which picks one column of the
residual ``R``, and a projection step ``R <- (I - u u^T) R`` with ``u`` the
normalized selected residual column.  They differ only in selection: SPA
takes the column of largest norm, robust SPA runs
:func:`~rspa.selection.diversify_select`.

Indices are 0-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ContractViolation
from .io import l1_normalize_columns
from .linalg import _project_inplace, _sq_column_norms, as_matrix
from .selection import ZERO_TOL, DiversificationState, RspaParams, diversify_select

__all__ = ["ExtractionResult", "extract", "spa_extract", "rspa_extract"]


@dataclass
class ExtractionResult:
    """Outcome of an extraction run.

    Attributes
    ----------
    indices : list of int
        Selected columns, in extraction order.
    per_step_residual_fro : list of float
        Frobenius norm of the residual after each projection.
    early_stop_reason : str or None
        ``"residual-exhausted"`` if the residual vanished before ``r`` steps.
    selections : list of DiversificationState
        Candidate diagnostics of every robust selection step (empty for SPA).
    zero_columns : list of int
        Columns left unnormalized by the optional l1 preprocessing.
    """

    indices: list[int] = field(default_factory=list)
    per_step_residual_fro: list[float] = field(default_factory=list)
    early_stop_reason: str | None = None
    selections: list[DiversificationState] = field(default_factory=list)
    zero_columns: list[int] = field(default_factory=list)

    @property
    def steps_completed(self) -> int:
        return len(self.indices)


def extract(X, r: int, params: RspaParams | None = None, normalize_l1: bool = False) -> ExtractionResult:
    """Extract ``r`` column indices of ``X``.

    Parameters
    ----------
    X : array_like, shape (m, n)
    r : int
        Number of columns to extract, ``1 <= r <= min(m, n)``.
    params : RspaParams, optional
        Run robust SPA with these parameters; plain SPA if omitted.
    normalize_l1 : bool
        Scale columns to unit l1 norm before extraction.

    The loop stops early, returning fewer than ``r`` indices, once
    ``||R||_F <= 1e-12 ||X||_F``.
    """
    X = as_matrix(X)
    m, n = X.shape
    if int(r) != r or not 1 <= r <= min(m, n):
        raise ContractViolation(f"r must be an integer in [1, {min(m, n)}], got {r!r}")
    result = ExtractionResult()
    if normalize_l1:
        X, result.zero_columns = l1_normalize_columns(X)

    R = np.array(X, order="F")
    sq = _sq_column_norms(R)
    fro2 = float(sq.sum())
    if fro2 == 0.0:
        raise ContractViolation("cannot extract columns from an all-zero matrix")
    stop = (ZERO_TOL**2) * fro2
    col_tol = ZERO_TOL * float(np.sqrt(sq.max()))

    while len(result.indices) < r:
        if float(sq.sum()) <= stop:
            result.early_stop_reason = "residual-exhausted"
            break
        if params is None:
            k = int(np.argmax(sq))
        else:
            outcome = diversify_select(R, params, zero_tol=col_tol)
            result.selections.append(outcome.state)
            k = outcome.chosen_index
        u = R[:, k] / np.sqrt(sq[k])
        _project_inplace(R, u, 1.0)
        sq = _sq_column_norms(R)
        result.indices.append(k)
        result.per_step_residual_fro.append(float(np.sqrt(sq.sum())))
    return result


def spa_extract(X, r: int, normalize_l1: bool = False) -> ExtractionResult:
    """Successive projection algorithm with ``f(x) = ||x||_2^2``."""
    return extract(X, r, None, normalize_l1)


def rspa_extract(X, r: int, params: RspaParams | None = None, normalize_l1: bool = False) -> ExtractionResult:
    """Robust SPA; ``params`` defaults to ``RspaParams()`` i.e. (20, 1, 4)."""
    return extract(X, r, RspaParams() if params is None else params, normalize_l1)
