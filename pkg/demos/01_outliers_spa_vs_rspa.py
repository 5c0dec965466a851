"""
SPA versus robust SPA on data with outliers
===========================================

We draw a separable matrix ``X = W [I, H]`` with 10 pure columns and add 10
Gaussian outlier columns.  The outliers have a larger norm than the pure
columns, so SPA, which always takes the column of largest residual norm,
picks them first.  Robust SPA looks at several candidates per step and keeps
the one whose removal shrinks the residual the most.
"""
import numpy as np

from rspa import RspaParams, generate_instance, recovery_rate, relative_error, rspa_extract, spa_extract

inst = generate_instance(m=30, r=10, n=1000, n_out=10, seed=42)
X = inst.X
print("X:", X.shape, "| pure columns at", sorted(inst.true_vertex_indices))

norms = np.linalg.norm(X, axis=0)
print("mean norm, pure columns: %.2f" % norms[inst.true_vertex_indices].mean())
print("mean norm, outliers:     %.2f" % norms[inst.outlier_indices].mean())

###############################################################################
# Plain SPA
spa = spa_extract(X, 10)
print("\nSPA  picks", spa.indices)
print("     recovered %.0f%% of W, %d outliers"
      % (recovery_rate(spa.indices, inst.true_vertex_indices),
         len(set(spa.indices) & set(inst.outlier_indices))))

###############################################################################
# Robust SPA with the recommended setting d=40, p=1, beta=4
rob = rspa_extract(X, 10, RspaParams(d=40, p=1, beta=4))
print("RSPA picks", rob.indices)
print("     recovered %.0f%% of W, %d outliers"
      % (recovery_rate(rob.indices, inst.true_vertex_indices),
         len(set(rob.indices) & set(inst.outlier_indices))))

###############################################################################
# Reconstruction quality: min_{H >= 0} ||X - X[:, K] H||_F / ||X||_F
print("\nrelative error  SPA: %.4f   RSPA: %.4f"
      % (relative_error(X, spa.indices), relative_error(X, rob.indices)))
