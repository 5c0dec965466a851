"""Dense column operations shared by the extraction algorithms.

Matrices are plain ``numpy.ndarray`` objects of dtype float64, stored in
column-major (Fortran) order since every algorithm here scans columns.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import ContractViolation

__all__ = [
    "as_matrix",
    "column_norms",
    "rank1_update",
    "conditioning",
    "ConditioningReport",
]


def as_matrix(M, *, copy: bool = False) -> np.ndarray:
    """Validate ``M`` and return it as a column-major float64 2-D array.

    Raises
    ------
    ContractViolation
        If ``M`` is not two-dimensional, is empty, or holds NaN/Inf.
    """
    A = (np.array if copy else np.asarray)(M, dtype=np.float64, order="F")
    if A.ndim != 2:
        raise ContractViolation(f"expected a 2-D matrix, got shape {A.shape}")
    if A.shape[0] < 1 or A.shape[1] < 1:
        raise ContractViolation(f"matrix must have at least one row and column, got {A.shape}")
    if not np.isfinite(A).all():
        bad = np.argwhere(~np.isfinite(A))[0]
        raise ContractViolation(f"non-finite entry at row {bad[0]}, column {bad[1]}")
    return A


def _sq_column_norms(M: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->j", M, M)


def column_norms(M) -> np.ndarray:
    """Euclidean norm of every column of ``M``."""
    M = as_matrix(M)
    return np.sqrt(_sq_column_norms(M))


def _unit(u, rows: int) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64).ravel()
    if u.shape[0] != rows:
        raise ContractViolation(f"vector length {u.shape[0]} does not match {rows} rows")
    nrm = np.linalg.norm(u)
    if not abs(nrm - 1.0) <= 1e-12:
        raise ContractViolation(f"expected a unit vector, got norm {nrm!r}")
    return u


def _project_inplace(M: np.ndarray, u: np.ndarray, alpha: float) -> None:
    # M <- (I - alpha u u^T) M
    M -= np.outer(alpha * u, u @ M)


def rank1_update(M, u, alpha: float = 1.0) -> np.ndarray:
    """Return ``(I - alpha u u^T) M`` without modifying ``M``.

    Parameters
    ----------
    M : array_like, shape (m, n)
    u : array_like, shape (m,)
        Unit-norm direction.
    alpha : float in (0, 1]
        ``alpha = 1`` is the orthogonal projection onto the complement of ``u``.
    """
    if not 0.0 < alpha <= 1.0:
        raise ContractViolation(f"alpha must lie in (0, 1], got {alpha!r}")
    out = as_matrix(M, copy=True)
    _project_inplace(out, _unit(u, out.shape[0]), alpha)
    return out


@dataclass(frozen=True)
class ConditioningReport:
    """Conditioning of the quadratic selection function ``x -> ||P_i...P_1 x||^2``."""

    step: int
    kappa: float
    kappa_bound: float
    alphas_used: list[float] = field(default_factory=list)


def conditioning(projectors: Sequence[tuple[np.ndarray, float]], rows: int) -> ConditioningReport:
    """Condition number of the composed quadratic form built from ``projectors``.

    ``projectors`` lists ``(u, alpha)`` pairs in application order, each
    defining ``P = I - alpha u u^T`` with ``alpha`` in (0, 1).  The explicit
    ``rows x rows`` product is formed, so this is meant for diagnostics only.
    """
    alphas = []
    M = np.eye(rows)
    for u, alpha in projectors:
        if not 0.0 < alpha < 1.0:
            raise ContractViolation(f"alpha must lie in (0, 1), got {alpha!r}")
        _project_inplace(M, _unit(u, rows), float(alpha))
        alphas.append(float(alpha))
    if not alphas:
        return ConditioningReport(step=1, kappa=1.0, kappa_bound=1.0)
    s = np.linalg.svd(M, compute_uv=False)
    kappa = float((s[0] / s[-1]) ** 2)
    bound = float(np.prod([(1.0 - a) ** -2 for a in alphas]))
    return ConditioningReport(
        step=len(alphas) + 1, kappa=max(kappa, 1.0), kappa_bound=bound, alphas_used=alphas
    )
