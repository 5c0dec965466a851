"""Synthetic separable data with outliers, and the recovery benchmark.

Instances follow the usual outlier experiment: ``W`` has i.i.d. U(0, 1)
entries, the data are ``W [I_r, H]`` with the columns of ``H`` drawn from
U(0, 1) and scaled to unit l1 norm, N(0, 1) outlier columns are appended and
all columns are shuffled.

Random streams come from :class:`numpy.random.SeedSequence` and the PCG64
bit generator.  An instance is keyed by ``(base_seed, m, trial)``; separate
child streams draw ``W``, ``H``, the outliers and the column permutation.
"""
from __future__ import annotations

import csv
import time
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import ContractViolation
from .extraction import extract
from .selection import RspaParams

__all__ = [
    "SyntheticInstance",
    "SweepConfig",
    "SweepRow",
    "SweepResult",
    "generate_instance",
    "instance_seed",
    "recovery_rate",
    "parse_algorithm",
    "run_sweep",
]

DEFAULT_M_VALUES = (10, 15, 20, 25, 30, 35, 40, 45, 50)


@dataclass
class SyntheticInstance:
    X: np.ndarray
    W: np.ndarray
    true_vertex_indices: list[int]
    outlier_indices: list[int]
    seed: int | Sequence[int]
    placement: np.ndarray  # placement[j] = original position of column j of X


def _streams(seed, n: int = 4):
    ss = np.random.SeedSequence(seed)
    return [np.random.Generator(np.random.PCG64(s)) for s in ss.spawn(n)]


def generate_instance(
    m: int,
    r: int,
    n: int,
    n_out: int = 0,
    seed=0,
    min_singular_value: float | None = None,
) -> SyntheticInstance:
    """Draw a separable matrix of ``n`` columns plus ``n_out`` outliers.

    Parameters
    ----------
    m, r, n, n_out : int
        Rows, factorization rank, number of data columns (including the
        ``r`` pure columns) and number of outlier columns.
    seed : int or sequence of int
        Entropy passed to :class:`numpy.random.SeedSequence`.
    min_singular_value : float, optional
        Redraw ``W`` until its smallest singular value reaches this value.
        Off by default; ill-conditioned draws at small ``m`` are part of the
        benchmark.
    """
    if min(m, r) < 1 or n <= r or n_out < 0:
        raise ContractViolation(f"invalid dimensions m={m}, r={r}, n={n}, n_out={n_out}")
    if r > m:
        warnings.warn(f"r={r} exceeds m={m}; W cannot have full column rank", RuntimeWarning, stacklevel=2)
    rng_w, rng_h, rng_out, rng_perm = _streams(seed)

    W = rng_w.uniform(size=(m, r))
    if min_singular_value is not None:
        for _ in range(1000):
            if np.linalg.svd(W, compute_uv=False)[-1] >= min_singular_value:
                break
            W = rng_w.uniform(size=(m, r))
        else:
            raise ContractViolation("could not draw a well-conditioned W")
    H = rng_h.uniform(size=(r, n - r))
    H /= H.sum(axis=0)
    X0 = np.hstack([W, W @ H, rng_out.standard_normal((m, n_out))])
    perm = rng_perm.permutation(n + n_out)
    X = np.asfortranarray(X0[:, perm])
    position = np.empty_like(perm)
    position[perm] = np.arange(perm.size)
    return SyntheticInstance(
        X=X,
        W=W,
        true_vertex_indices=position[:r].tolist(),
        outlier_indices=sorted(position[n:].tolist()),
        seed=seed,
        placement=perm,
    )


def recovery_rate(extracted, truth) -> float:
    """Percentage of ``truth`` indices present in ``extracted``."""
    truth = set(int(k) for k in truth)
    if not truth:
        raise ContractViolation("truth must be non-empty")
    return 100.0 * len(truth.intersection(int(k) for k in extracted)) / len(truth)


def instance_seed(base_seed: int, m: int, trial: int) -> list[int]:
    """Seed entropy of trial ``trial`` at row count ``m``."""
    return [int(base_seed), int(m), int(trial)]


def parse_algorithm(spec: str) -> tuple[str, RspaParams | None]:
    """Parse ``"spa"`` or ``"rspa:d:p:beta"`` into ``(name, params)``."""
    parts = spec.strip().lower().split(":")
    if parts == ["spa"]:
        return "spa", None
    if parts[0] == "rspa" and len(parts) == 4:
        params = RspaParams(int(parts[1]), float(parts[2]), float(parts[3]))
        return f"rspa:{params.d}:{params.p:g}:{params.beta:g}", params
    if parts == ["rspa"]:
        params = RspaParams()
        return f"rspa:{params.d}:{params.p:g}:{params.beta:g}", params
    raise ValueError(f"cannot parse algorithm {spec!r}; expected 'spa' or 'rspa:d:p:beta'")


@dataclass
class SweepConfig:
    m_values: Sequence[int] = DEFAULT_M_VALUES
    r: int = 10
    n: int = 1000
    n_out: int = 10
    trials: int = 100
    algorithms: Sequence[str] = ("spa", "rspa:40:1:4")
    base_seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ContractViolation("trials must be >= 1")
        if not len(self.m_values):
            raise ContractViolation("m_values must be non-empty")
        for a in self.algorithms:
            parse_algorithm(a)


@dataclass
class SweepRow:
    algorithm: str
    m: int
    mean_recovery: float
    std_recovery: float
    mean_time_s: float
    failures: int = 0


@dataclass
class SweepResult:
    rows: list[SweepRow] = field(default_factory=list)

    def to_csv(self, path_or_file) -> None:
        """Write ``algorithm,m,mean_recovery,std_recovery,mean_time_s``."""
        own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["algorithm", "m", "mean_recovery", "std_recovery", "mean_time_s"])
            for row in self.rows:
                w.writerow([row.algorithm, row.m, f"{row.mean_recovery:.6g}",
                            f"{row.std_recovery:.6g}", f"{row.mean_time_s:.6g}"])
        finally:
            if own:
                fh.close()

    def lookup(self, algorithm: str, m: int) -> SweepRow:
        for row in self.rows:
            if row.algorithm == algorithm and row.m == m:
                return row
        raise KeyError((algorithm, m))


def run_sweep(config: SweepConfig, progress=None) -> SweepResult:
    """Run every algorithm on ``config.trials`` instances per value of m.

    All algorithms see the same instances.  A trial whose extraction raises
    counts as 0% recovery and increments the row's ``failures``.
    ``progress``, if given, is called as ``progress(m, trial)``.
    """
    algos = [parse_algorithm(a) for a in config.algorithms]
    rec = {(name, m): [] for name, _ in algos for m in config.m_values}
    times = {key: [] for key in rec}
    failures = {key: 0 for key in rec}
    for m in config.m_values:
        for trial in range(config.trials):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                inst = generate_instance(m, config.r, config.n, config.n_out,
                                         instance_seed(config.base_seed, m, trial))
            for name, params in algos:
                t0 = time.perf_counter()
                try:
                    K = extract(inst.X, config.r, params).indices
                    score = recovery_rate(K, inst.true_vertex_indices)
                except (ContractViolation, ArithmeticError, np.linalg.LinAlgError):
                    score = 0.0
                    failures[name, m] += 1
                times[name, m].append(time.perf_counter() - t0)
                rec[name, m].append(score)
            if progress is not None:
                progress(m, trial)
    result = SweepResult()
    for name, _ in sorted(algos, key=lambda a: a[0]):
        for m in sorted(config.m_values):
            vals = np.asarray(rec[name, m])
            result.rows.append(SweepRow(name, m, float(vals.mean()), float(vals.std()),
                                        float(np.mean(times[name, m])), failures[name, m]))
    return result
