"""Diversified candidate selection used by robust SPA.

A single selection step evaluates up to ``d`` candidate columns.  Candidate
``i`` maximizes ``f_i(x) = ||P_i ... P_1 x||^2`` over the columns of the
residual, where each ``P_{j+1} = I - alpha_j u u^T`` is tuned so that the
previous winner cannot be picked again.  The candidate whose removal leaves
the smallest residual score wins.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ContractViolation, DegenerateDirection
from .linalg import (
    ConditioningReport,
    _project_inplace,
    _sq_column_norms,
    as_matrix,
    conditioning,
)

__all__ = [
    "RspaParams",
    "DiversificationState",
    "SelectionOutcome",
    "alpha_star",
    "residual_score",
    "diversify_select",
]

ZERO_TOL = 1e-12


@dataclass(frozen=True)
class RspaParams:
    """Parameters ``(d, p, beta)`` of robust SPA.

    d : number of candidates examined per selection step (``d = 1`` is SPA).
    p : exponent applied to column norms in the residual score.
    beta : diversification factor, strictly greater than one.
    """

    d: int = 20
    p: float = 1.0
    beta: float = 4.0

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ContractViolation(f"d must be an integer >= 1, got {self.d!r}")
        if not self.p > 0:
            raise ContractViolation(f"p must be > 0, got {self.p!r}")
        if not self.beta > 1:
            raise ContractViolation(f"beta must be > 1, got {self.beta!r}")

    def __str__(self):
        return f"RSPA({self.d},{self.p:g},{self.beta:g})"


@dataclass
class DiversificationState:
    """Scratch data of one diversified selection step.

    ``candidates[i]`` and ``scores[i]`` belong to the i-th quadratic function;
    ``runners_up[i]``, ``alphas[i]`` and ``directions[i]`` describe the
    projector built after it (so these lists may be one shorter).
    """

    Y: np.ndarray
    candidates: list[int] = field(default_factory=list)
    runners_up: list[int] = field(default_factory=list)
    alphas: list[float] = field(default_factory=list)
    directions: list[np.ndarray] = field(default_factory=list)
    scores: list[float] = field(default_factory=list)
    stop_reason: str | None = None

    @property
    def steps_completed(self) -> int:
        return len(self.candidates)

    def conditioning(self) -> ConditioningReport:
        """Conditioning of the last quadratic function used."""
        k = max(self.steps_completed - 1, 0)
        pairs = list(zip(self.directions[:k], self.alphas[:k]))
        return conditioning(pairs, self.Y.shape[0])


@dataclass
class SelectionOutcome:
    chosen_index: int
    state: DiversificationState


def alpha_star(x, y, beta: float) -> float:
    """Coefficient ``alpha`` in (0, 1) such that, with ``u = x / ||x||``,
    ``||(I - alpha u u^T) y||^2 == beta * ||(I - alpha u u^T) x||^2``.

    Requires ``||x|| >= ||y|| > 0`` and ``beta > 1``.  Raises
    :class:`DegenerateDirection` if ``y`` is numerically parallel to ``x``.
    """
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise ContractViolation("x and y must have the same length")
    if not beta > 1:
        raise ContractViolation(f"beta must be > 1, got {beta!r}")
    xx = float(x @ x)
    yy = float(y @ y)
    if yy == 0.0:
        raise DegenerateDirection("y is the zero vector")
    # equal norms are legitimate (argmax ties); allow a few ulps of slack
    if xx < yy * (1.0 - 1e-12):
        raise ContractViolation("alpha_star requires ||x|| >= ||y||")
    u = x / math.sqrt(xx)
    uy = float(u @ y)
    # squared distance of y to span(u), computed without cancellation
    perp = y - uy * u
    perp2 = float(perp @ perp)
    if perp2 <= 1e-12 * yy:
        raise DegenerateDirection("x and y are parallel")
    ux = float(u @ x)
    delta = beta * ux * ux - uy * uy
    # 1 - (beta ||x||^2 - ||y||^2) / delta rewritten with ||x|| = u^T x
    return 1.0 - math.sqrt(perp2 / delta)


def residual_score(R_proj, p: float) -> float:
    """Sum over columns of ``||R_proj(:, k)||_2 ** p``."""
    if not p > 0:
        raise ContractViolation(f"p must be > 0, got {p!r}")
    norms = np.sqrt(_sq_column_norms(as_matrix(R_proj)))
    return float(np.sum(norms**p))


def diversify_select(R, params: RspaParams, zero_tol: float | None = None) -> SelectionOutcome:
    """Pick one column of ``R`` among ``params.d`` diversified candidates.

    Parameters
    ----------
    R : array_like, shape (m, n)
        Current residual matrix.
    params : RspaParams
    zero_tol : float, optional
        Absolute norm below which a column counts as zero.  Defaults to
        ``1e-12`` times the largest column norm of ``R``.

    Returns
    -------
    SelectionOutcome
        The chosen column index together with the per-candidate diagnostics.

    Notes
    -----
    The residual after removing candidate ``i`` is measured with the
    direction of ``R(:, k(i))``, while the diversification coefficient and
    the update of the carrier ``Y`` use the direction of ``Y(:, k(i))``.  For
    the first candidate both coincide.  The loop stops early, keeping the
    candidates found so far, when the residual becomes rank one or the
    runner-up is parallel to the current candidate.
    """
    R = as_matrix(R)
    r_norms = np.sqrt(_sq_column_norms(R))
    ref = float(r_norms.max())
    if ref == 0.0:
        raise ContractViolation("cannot select a column of an all-zero matrix")
    tol = ZERO_TOL * ref if zero_tol is None else float(zero_tol)
    if ref <= tol:
        raise ContractViolation("every column of R is below the zero tolerance")

    Y = np.array(R, order="F")
    state = DiversificationState(Y=Y)
    for i in range(params.d):
        k = int(np.argmax(_sq_column_norms(Y)))
        if i > 0 and r_norms[k] <= tol:
            state.stop_reason = "zero-candidate"
            break
        u = R[:, k] / r_norms[k]
        R_i = R - np.outer(u, u @ R)
        res_norms = np.sqrt(_sq_column_norms(R_i))
        state.candidates.append(k)
        state.scores.append(float(np.sum(res_norms**params.p)))
        if i == params.d - 1:
            break
        if res_norms.max() <= tol:
            state.stop_reason = "rank-one-residual"
            break
        k_next = int(np.argmax(res_norms))
        x = Y[:, k]
        try:
            alpha = alpha_star(x, Y[:, k_next], params.beta)
        except DegenerateDirection:
            state.stop_reason = "degenerate-direction"
            break
        u_hat = x / np.linalg.norm(x)
        state.runners_up.append(k_next)
        state.alphas.append(alpha)
        state.directions.append(u_hat)
        _project_inplace(Y, u_hat, alpha)

    best = int(np.argmin(state.scores))
    return SelectionOutcome(chosen_index=state.candidates[best], state=state)
