"""
Recovery of W as the number of rows grows
=========================================

A reduced version of the outlier benchmark: for each m we draw several
instances (10 pure columns, 1000 columns, 10 outliers) and report the mean
percentage of pure columns found.  Increase ``trials`` to 100 to match the
full protocol.  The table is also written as CSV; a plot is drawn when
matplotlib is available.
"""
import sys

from rspa import SweepConfig, run_sweep

config = SweepConfig(
    m_values=[10, 20, 30, 40, 50],
    r=10, n=1000, n_out=10,
    trials=10,
    algorithms=["spa", "rspa:10:1:4", "rspa:40:1:4", "rspa:40:2:4"],
    base_seed=0,
)
result = run_sweep(config, progress=lambda m, t: print(f"\rm={m} trial {t + 1}", end="", file=sys.stderr))
print(file=sys.stderr)

for row in result.rows:
    print(f"{row.algorithm:>12s}  m={row.m:<3d} {row.mean_recovery:6.1f}%  ({row.mean_time_s * 1e3:.0f} ms)")
result.to_csv("recovery_sweep.csv")

try:
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit(0)

for name in config.algorithms:
    rows = [r for r in result.rows if r.algorithm == name]
    plt.plot([r.m for r in rows], [r.mean_recovery for r in rows], "o-", label=name)
plt.xlabel("m")
plt.ylabel("% of W recovered")
plt.legend()
plt.savefig("recovery_sweep.png", dpi=120)
