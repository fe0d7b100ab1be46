"""
From a time series to a motif rank pattern
==========================================

Walk one series through every stage: DFA exponent, mutual-information
delay, delay embedding, nearest-neighbor network, 4-node motif census and
the superfamily the DFA exponent predicts.
"""

import numpy as np

from tsmotif import (
    EmbeddingConfig,
    FbmSpec,
    build_nn_graph,
    dfa_alpha,
    embed_series,
    estimate_delay,
    generate_fbm,
    motif_census,
    pattern_for_alpha,
    rank_pattern,
)

walk = generate_fbm(FbmSpec(hurst=0.3, length=10_000, seed=1))

# alpha is measured on the increments of the walk
dfa = dfa_alpha(np.diff(walk.values))
print(f"DFA alpha = {dfa.alpha:.3f} over box sizes {dfa.scales[0]}..{dfa.scales[-1]}")

# delay at the first minimum of the mutual information profile
delay = estimate_delay(walk, max_lag=500)
print(f"delay tau = {delay.delay} (no minimum found: {delay.no_minimum})")

emb = embed_series(walk, EmbeddingConfig(dimension=10, delay=delay.delay))
graph = build_nn_graph(emb)
print(f"{emb.n} nodes, {graph.edge_count} edges, mean degree {graph.mean_degree():.1f}")

counts = motif_census(graph)
for shape, c, f in zip(("path", "star", "cycle", "tadpole", "diamond", "clique"), counts.counts, counts.frequencies()):
    print(f"  {shape:8s} {c:9d}  {f:.4f}")

print("empirical pattern:", rank_pattern(counts))
print("predicted from alpha:", pattern_for_alpha(dfa.alpha))
