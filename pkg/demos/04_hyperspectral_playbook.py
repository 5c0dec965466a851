"""
Running on a hyperspectral image
================================

Hyperspectral cubes are stored flattened as ``bands x pixels`` in the rawbin
format.  If you have a cube as a ``(height, width, bands)`` numpy array
(converted from MAT/ENVI with your tool of choice), save it like this::

    cube = ...                                   # (h, w, bands)
    X = cube.reshape(-1, cube.shape[2]).T        # row-major pixel scan
    save_matrix("urban.bin", X, "rawbin", height=h, width=w)

This script then extracts endmembers with SPA and robust SPA and reports the
relative NNLS error of each index set.  Without an argument it runs on a
synthetic stand-in.

    python 04_hyperspectral_playbook.py urban.bin 6
"""
import sys
import time

from rspa import RspaParams, generate_instance, load_matrix, relative_error, rspa_extract, spa_extract

if len(sys.argv) >= 3:
    X = load_matrix(sys.argv[1], "rawbin")
    r = int(sys.argv[2])
else:
    X = abs(generate_instance(100, 6, 20000, 50, seed=0).X)
    r = 6
print("data:", X.shape)

runs = [("SPA", None), ("RSPA(10,1,4)", RspaParams(10, 1, 4)), ("RSPA(20,1,4)", RspaParams(20, 1, 4))]
for name, params in runs:
    t0 = time.perf_counter()
    K = (spa_extract(X, r) if params is None else rspa_extract(X, r, params)).indices
    dt = time.perf_counter() - t0
    print(f"{name:>13s}: error {100 * relative_error(X, K):6.2f}%  ({dt:.1f} s)  K={K}")
