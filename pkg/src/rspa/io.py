"""Matrix and index-file I/O, plus column preprocessing.

Two on-disk matrix formats are supported:

``csv``
    One matrix row per line, comma separated decimal literals.
``rawbin``
    A payload of ``rows * cols`` little-endian float64 values in column-major
    order, next to a JSON header stored at ``<path>.json``.  Hyperspectral
    cubes are flattened to ``bands x pixels``; the optional ``height`` and
    ``width`` header keys record the row-major pixel grid.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .exceptions import MatrixFormatError
from .linalg import as_matrix

__all__ = [
    "load_matrix",
    "save_matrix",
    "read_header",
    "load_indices",
    "save_indices",
    "l1_normalize_columns",
]

DTYPE_TAG = "float64-le"
LAYOUT_TAG = "column-major"


def _check_finite(A: np.ndarray, path) -> None:
    bad = ~np.isfinite(A)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise MatrixFormatError(f"{path}: non-finite value at row {i}, column {j}")


def _load_csv(path) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(tok) for tok in line.split(",")])
            except ValueError as exc:
                raise MatrixFormatError(f"{path}:{lineno}: {exc}") from None
            if len(rows[-1]) != len(rows[0]):
                raise MatrixFormatError(
                    f"{path}:{lineno}: expected {len(rows[0])} fields, got {len(rows[-1])}"
                )
    if not rows:
        raise MatrixFormatError(f"{path}: empty matrix file")
    A = np.array(rows, dtype=np.float64, order="F")
    _check_finite(A, path)
    return A


def header_path(path) -> Path:
    return Path(os.fspath(path) + ".json")


def read_header(path) -> dict:
    """Read the JSON header that accompanies a rawbin payload."""
    hp = header_path(path)
    try:
        header = json.loads(hp.read_text())
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{hp}: {exc}") from None
    for key in ("rows", "cols"):
        if not isinstance(header.get(key), int) or header[key] < 1:
            raise MatrixFormatError(f"{hp}: '{key}' must be a positive integer")
    if header.get("dtype", DTYPE_TAG) != DTYPE_TAG:
        raise MatrixFormatError(f"{hp}: unsupported dtype {header['dtype']!r}")
    if header.get("layout", LAYOUT_TAG) != LAYOUT_TAG:
        raise MatrixFormatError(f"{hp}: unsupported layout {header['layout']!r}")
    return header


def _load_rawbin(path) -> np.ndarray:
    header = read_header(path)
    m, n = header["rows"], header["cols"]
    payload = np.fromfile(path, dtype="<f8")
    if payload.size != m * n or os.path.getsize(path) != 8 * m * n:
        raise MatrixFormatError(
            f"{path}: header declares {m}x{n} = {m * n} values, payload holds "
            f"{os.path.getsize(path) / 8:g}"
        )
    A = payload.astype(np.float64).reshape((m, n), order="F")
    _check_finite(A, path)
    return A


def load_matrix(path, format: str = "csv") -> np.ndarray:
    """Read a matrix stored as ``csv`` or ``rawbin``."""
    if format == "csv":
        return _load_csv(path)
    if format == "rawbin":
        return _load_rawbin(path)
    raise ValueError(f"unknown matrix format {format!r}")


def save_matrix(path, M, format: str = "csv", **labels) -> None:
    """Write ``M`` as ``csv`` or ``rawbin``.

    Extra keyword arguments (e.g. ``height``, ``width``, ``bands``) are
    stored in the rawbin header and ignored for CSV.
    """
    M = as_matrix(M)
    if format == "csv":
        with open(path, "w") as fh:
            for row in M:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")
    elif format == "rawbin":
        header = {"rows": M.shape[0], "cols": M.shape[1], "dtype": DTYPE_TAG, "layout": LAYOUT_TAG}
        header.update(labels)
        np.asarray(M, dtype="<f8").ravel(order="F").tofile(path)
        header_path(path).write_text(json.dumps(header, indent=1) + "\n")
    else:
        raise ValueError(f"unknown matrix format {format!r}")


def load_indices(path) -> list[int]:
    """Read 0-based indices, one per line; ``#`` starts a comment."""
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                out.append(int(line))
            except ValueError:
                raise MatrixFormatError(f"{path}:{lineno}: not an integer: {line!r}") from None
    return out


def save_indices(path, indices, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        fh.writelines(f"{int(k)}\n" for k in indices)


def l1_normalize_columns(X) -> tuple[np.ndarray, list[int]]:
    """Scale every column to unit l1 norm.

    Columns whose l1 norm is at most ``1e-12`` times the largest column l1
    norm are left untouched; their indices are returned.
    """
    X = as_matrix(X, copy=True)
    l1 = np.abs(X).sum(axis=0)
    keep = l1 > 1e-12 * l1.max()
    X[:, keep] /= l1[keep]
    return X, np.flatnonzero(~keep).tolist()
