"""
Decimating a measured signal
============================

The scale sweep keeps every dt-th sample of a long recording and draws random
fixed-length windows at each dt. A long synthetic record stands in for a
measured signal here; point ``input_path`` at any one-column text file.
"""

import numpy as np

from tsmotif import RunConfig, TimeSeries, generate_fbm, FbmSpec, run_sweep, write_series

# a persistent walk with white measurement noise on top
walk = generate_fbm(FbmSpec(0.8, 60_000, seed=5)).values
signal = walk + 0.5 * np.random.default_rng(5).standard_normal(walk.size)
path = write_series(TimeSeries(signal, label="synthetic"), "synthetic_signal.txt")

report = run_sweep(
    RunConfig(mode="sweep-scale", input_path=str(path), dt_grid=(1, 2, 4, 8, 16), length=3000, realizations=3)
)
print(f"{'dt':>3} {'length':>7} {'alpha':>6}  modal")
for r in report.records:
    print(f"{r.cell_value:3d} {r.effective_length:7d} {r.mean_alpha:6.3f}  {r.modal_pattern}")
