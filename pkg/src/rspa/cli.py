"""Command line interface: ``rspa extract | evaluate | sweep | synth``.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import configparser
import json
import sys
import time

import numpy as np

from .exceptions import ContractViolation, MatrixFormatError
from .extraction import extract
from .io import load_indices, load_matrix, save_indices, save_matrix
from .nnls import nnls_solve
from .selection import RspaParams
from .synth import SweepConfig, generate_instance, run_sweep

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rspa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract r column indices")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["csv", "rawbin"], default="csv")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--algo", choices=["spa", "rspa"], default="rspa")
    p.add_argument("--d", type=int, default=20)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=4.0)
    p.add_argument("--normalize-l1", action="store_true")
    p.add_argument("--out", help="write indices here, one per line")
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall time from the summary (byte-stable output)")

    p = sub.add_parser("evaluate", help="relative NNLS error of an index set")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["csv", "rawbin"], default="csv")
    p.add_argument("--indices", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=None)

    p = sub.add_parser("sweep", help="run the synthetic recovery benchmark")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("synth", help="write a synthetic instance")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--outliers", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    return parser


def _cmd_extract(args) -> int:
    X = load_matrix(args.input, args.format)
    try:
        params = None if args.algo == "spa" else RspaParams(args.d, args.p, args.beta)
    except ContractViolation as exc:
        raise _UsageError(exc) from None
    t0 = time.perf_counter()
    res = extract(X, args.r, params, normalize_l1=args.normalize_l1)
    elapsed = time.perf_counter() - t0
    if args.out:
        save_indices(args.out, res.indices)
    for k in res.indices:
        print(k)
    summary = {
        "algorithm": "spa" if params is None else f"rspa:{params.d}:{params.p:g}:{params.beta:g}",
        "indices": res.indices,
        "steps_completed": res.steps_completed,
        "per_step_residual_fro": res.per_step_residual_fro,
        "early_stop_reason": res.early_stop_reason,
    }
    if args.normalize_l1:
        summary["zero_columns"] = res.zero_columns
    if not args.no_timing:
        summary["wall_time_s"] = elapsed
    print(json.dumps(summary))
    return 0


def _cmd_evaluate(args) -> int:
    X = load_matrix(args.input, args.format)
    K = load_indices(args.indices)
    if not K or len(set(K)) != len(K) or min(K) < 0 or max(K) >= X.shape[1]:
        raise ContractViolation(f"index file must hold distinct indices in [0, {X.shape[1]})")
    norm = float(np.linalg.norm(X))
    if norm == 0.0:
        raise ContractViolation("X is the zero matrix")
    sol = nnls_solve(X[:, K], X, args.tol, args.max_iter)
    err = sol.objective / norm
    print(f"relative_error {err!r}")
    print(f"percent {100 * err!r}")
    if not sol.converged:
        print(f"rspa: NNLS did not converge (kkt residual {sol.kkt_residual:.3g})", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


def read_sweep_config(path) -> SweepConfig:
    """Parse a flat ``key = value`` file into a :class:`SweepConfig`."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    with open(path) as fh:
        parser.read_string("[sweep]\n" + fh.read(), source=str(path))
    sec = parser["sweep"]
    known = {"m_values", "r", "n", "n_out", "trials", "algorithms", "base_seed"}
    unknown = set(sec) - known
    if unknown:
        raise _UsageError(f"{path}: unknown keys {sorted(unknown)}")

    def ints(s):
        return [int(v) for v in s.replace(",", " ").split()]

    kw = {}
    if "m_values" in sec:
        kw["m_values"] = ints(sec["m_values"])
    for key in ("r", "n", "n_out", "trials", "base_seed"):
        if key in sec:
            kw[key] = sec.getint(key)
    if "algorithms" in sec:
        kw["algorithms"] = sec["algorithms"].replace(",", " ").split()
    return SweepConfig(**kw)


def _cmd_sweep(args) -> int:
    try:
        config = read_sweep_config(args.config)
    except (configparser.Error, ValueError) as exc:
        raise _UsageError(f"{args.config}: {exc}") from None
    result = run_sweep(config)
    result.to_csv(args.out)
    for row in result.rows:
        flag = f"  ({row.failures} failed)" if row.failures else ""
        print(f"{row.algorithm:>16s} m={row.m:<4d} recovery {row.mean_recovery:.6g}% "
              f"+/- {row.std_recovery:.6g}{flag}")
    return 0


def _cmd_synth(args) -> int:
    inst = generate_instance(args.m, args.r, args.n, args.outliers, args.seed)
    save_matrix(args.out, inst.X, "rawbin", seed=args.seed, r=args.r)
    save_indices(args.out + ".vertices.txt", inst.true_vertex_indices,
                 "columns of X equal to the columns of W, in W order")
    save_indices(args.out + ".outliers.txt", inst.outlier_indices, "outlier columns")
    print(f"wrote {args.out} ({inst.X.shape[0]}x{inst.X.shape[1]}), "
          f"{args.out}.vertices.txt, {args.out}.outliers.txt")
    return 0


_COMMANDS = {
    "extract": _cmd_extract,
    "evaluate": _cmd_evaluate,
    "sweep": _cmd_sweep,
    "synth": _cmd_synth,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"rspa: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, MatrixFormatError, ContractViolation) as exc:
        print(f"rspa {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"rspa {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
