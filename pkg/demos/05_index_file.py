"""
Analyzing a price index file
============================

Load the closing-price column of a CSV, build the network from the raw
index values and compare the empirical pattern with the one predicted by the
DFA exponent of the price changes. A random walk is written to disk first so
the script runs without external data; replace ``csv_path`` with a real file
(e.g. ``date,open,high,low,close`` with one header row and column 4).
"""

import numpy as np

from tsmotif import RunConfig, analyze_series, load_column_series

rng = np.random.default_rng(1896)
prices = 100 * np.exp(np.cumsum(0.01 * rng.standard_normal(10_000)))
csv_path = "index.csv"
with open(csv_path, "w") as fh:
    fh.write("day,close\n")
    for i, p in enumerate(prices):
        fh.write(f"{i},{float(p)!r}\n")

series = load_column_series(csv_path, column=1, header_rows=1)
result = analyze_series(series, RunConfig())
print(f"alpha of price changes: {result.dfa.alpha:.3f}")
print(f"delay {result.delay.delay}, {result.node_count} nodes, {result.edge_count} edges")
print("empirical:", result.pattern, " predicted:", result.verdict.predicted_pattern)

# same thing from the shell:
#   tsmotif analyze index.csv --column 1 --header-rows 1 --out index_run
