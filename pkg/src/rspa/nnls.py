"""Nonnegative least squares and the relative reconstruction error.

The solver is block principal pivoting on the normal equations (Kim & Park,
2011): the Gram matrix ``W^T W`` is formed once and columns of ``X`` sharing
a passive set are solved together.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import ContractViolation
from .linalg import as_matrix

__all__ = ["NnlsSolution", "nnls_solve", "relative_error"]


@dataclass
class NnlsSolution:
    """Result of :func:`nnls_solve`.

    ``kkt_residual`` is the largest violation of the optimality conditions,
    relative to ``||W^T x_j||_inf`` of the column it occurs in.
    """

    H: np.ndarray
    objective: float
    kkt_residual: float
    iterations: int
    converged: bool
    rank_deficient: bool = False


def _solve_groups(G, B, passive):
    """Solve ``G[F, F] z = B[F, j]`` for each column j with passive set F."""
    Z = np.zeros_like(B)
    if B.shape[1] == 0:
        return Z
    patterns, inverse = np.unique(passive, axis=1, return_inverse=True)
    inverse = np.ravel(inverse)
    for g in range(patterns.shape[1]):
        F = patterns[:, g]
        if not F.any():
            continue
        cols = np.flatnonzero(inverse == g)
        Z[np.ix_(F, cols)] = np.linalg.solve(G[np.ix_(F, F)], B[np.ix_(F, cols)])
    return Z


def _kkt_violation(G, B, H, scale):
    grad = G @ H - B
    viol = np.where(H > 0, np.abs(grad), np.maximum(-grad, 0.0))
    return viol / scale


def nnls_solve(W, X, tol: float = 1e-8, max_iter: int | None = None) -> NnlsSolution:
    """Solve ``min_{H >= 0} ||X - W H||_F`` column by column.

    Parameters
    ----------
    W : array_like, shape (m, r)
    X : array_like, shape (m, n)
    tol : float
        Tolerance on the scaled KKT residual used to declare convergence.
    max_iter : int, optional
        Pivoting iterations allowed per column, ``10 * r`` by default.

    Returns
    -------
    NnlsSolution
        If the iteration limit is hit, the current iterate is returned with
        ``converged=False``.

    If ``W`` is numerically rank deficient a tiny ridge
    ``1e-12 * trace(W^T W) / r`` is added to the Gram matrix and a
    ``RuntimeWarning`` is issued.
    """
    W = as_matrix(W)
    X = as_matrix(X)
    if W.shape[0] != X.shape[0]:
        raise ContractViolation(f"W has {W.shape[0]} rows but X has {X.shape[0]}")
    r, n = W.shape[1], X.shape[1]
    if max_iter is None:
        max_iter = 10 * r

    G = W.T @ W
    B = W.T @ X
    sv = np.linalg.svd(W, compute_uv=False)
    rank_deficient = r > W.shape[0] or sv[-1] <= sv[0] * max(W.shape) * np.finfo(float).eps
    if rank_deficient:
        warnings.warn("W is rank deficient; regularizing the Gram matrix", RuntimeWarning, stacklevel=2)
        G = G + (1e-12 * np.trace(G) / r) * np.eye(r)
    scale = np.abs(B).max(axis=0)
    scale[scale == 0] = 1.0
    tiny = 1e-14 * scale

    H = np.zeros((r, n))
    Y = -B
    passive = np.zeros((r, n), dtype=bool)
    ninf = np.full(n, r + 1)
    backup = np.full(n, 3)
    active_cols = np.arange(n)
    iterations = 0
    while active_cols.size and iterations < max_iter:
        Hc, Yc, Pc = H[:, active_cols], Y[:, active_cols], passive[:, active_cols]
        infeas = (Pc & (Hc < 0)) | (~Pc & (Yc < -tiny[active_cols]))
        count = infeas.sum(axis=0)
        done = count == 0
        if done.all():
            break
        iterations += 1
        active_cols = active_cols[~done]
        infeas, count, Pc = infeas[:, ~done], count[~done], Pc[:, ~done]

        # full exchange while the infeasibility count keeps dropping, then a
        # few tolerated non-improving full exchanges, then one variable at a time
        improved = count < ninf[active_cols]
        ninf[active_cols[improved]] = count[improved]
        backup[active_cols[improved]] = 3
        full = improved | (backup[active_cols] >= 1)
        backup[active_cols[~improved & full]] -= 1
        flip = infeas.copy()
        single = np.flatnonzero(~full)
        if single.size:
            last = r - 1 - np.argmax(infeas[::-1, single], axis=0)
            flip[:, single] = False
            flip[last, single] = True
        Pc = Pc ^ flip
        passive[:, active_cols] = Pc

        Bc = B[:, active_cols]
        Hc = _solve_groups(G, Bc, Pc)
        Yc = G @ Hc - Bc
        Yc[Pc] = 0.0
        H[:, active_cols] = Hc
        Y[:, active_cols] = Yc

    H = np.maximum(H, 0.0)
    viol = _kkt_violation(G, B, H, scale)
    kkt = float(viol.max()) if viol.size else 0.0
    objective = float(np.linalg.norm(X - W @ H))
    return NnlsSolution(
        H=H,
        objective=objective,
        kkt_residual=kkt,
        iterations=iterations,
        converged=kkt <= tol,
        rank_deficient=bool(rank_deficient),
    )


def relative_error(X, K, tol: float = 1e-8, max_iter: int | None = None) -> float:
    """``min_{H >= 0} ||X - X(:, K) H||_F / ||X||_F``."""
    X = as_matrix(X)
    K = [int(k) for k in K]
    if not K:
        raise ContractViolation("index set is empty")
    if len(set(K)) != len(K):
        raise ContractViolation(f"duplicate indices in {K}")
    n = X.shape[1]
    if min(K) < 0 or max(K) >= n:
        raise ContractViolation(f"indices must lie in [0, {n})")
    norm = float(np.linalg.norm(X))
    if norm == 0.0:
        raise ContractViolation("X is the zero matrix")
    return nnls_solve(X[:, K], X, tol, max_iter).objective / norm
