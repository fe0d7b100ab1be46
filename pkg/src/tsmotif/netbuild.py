"""Nearest-neighbor network over phase points."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.spatial import cKDTree

from .errors import DataError, ParameterError
from .rng import make_rng

__all__ = ["NNGraph", "build_nn_graph", "build_order", "write_edge_list", "LINKS_PER_NODE"]

LINKS_PER_NODE = 4


@dataclass(frozen=True)
class NNGraph:
    """Simple undirected graph in CSR form.

    ``indptr``/``indices`` hold sorted neighbor lists; ``edges`` is an
    ``(m, 2)`` array with ``u < v`` in lexicographic order.
    """

    node_count: int
    indptr: np.ndarray
    indices: np.ndarray
    edges: np.ndarray
    build_order: np.ndarray
    exhausted: int = 0

    @classmethod
    def from_edges(cls, n, edges, build_order=None, exhausted=0):
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ParameterError("edge endpoint out of range")
        if np.any(e[:, 0] == e[:, 1]):
            raise ParameterError("self-loops are not allowed")
        e = np.sort(e, axis=1)
        e = np.unique(e, axis=0)
        both = np.concatenate([e, e[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(both[:, 0], minlength=n), out=indptr[1:])
        if build_order is None:
            build_order = np.arange(n)
        return cls(int(n), indptr, both[:, 1].copy(), e, np.asarray(build_order, dtype=np.int64), int(exhausted))

    @property
    def edge_count(self):
        return int(self.edges.shape[0])

    def degrees(self):
        return np.diff(self.indptr)

    def neighbors(self, u):
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def has_edge(self, u, v):
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def mean_degree(self):
        return 2.0 * self.edge_count / self.node_count


def build_order(n: int, policy="temporal", seed: int = 0) -> np.ndarray:
    """Node visiting order: ``"temporal"`` (index order) or ``"shuffle"``."""
    if policy == "temporal":
        return np.arange(n)
    if policy == "shuffle":
        return make_rng(seed).permutation(n)
    raise ParameterError(f"unknown build order policy {policy!r}")


def _ranked(d, j):
    order = np.lexsort((j, d))
    return d[order], j[order]


def build_nn_graph(points, order="temporal", metric="euclidean", seed: int = 0, links: int = LINKS_PER_NODE) -> NNGraph:
    """Link every node to its ``links`` nearest not-yet-adjacent nodes.

    Nodes take turns in ``order`` (a policy name or an explicit permutation).
    At its turn a node discards candidates already adjacent to it, whoever
    created that edge, and links the nearest remaining ones. Distance ties
    go to the smaller node index. A node with fewer eligible candidates links
    all of them; such turns are counted in ``NNGraph.exhausted``.

    Neighbor search is exact: a k-d tree query widened until the selection
    cannot be affected by unseen candidates.
    """
    pts = np.asarray(getattr(points, "points", points), dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = pts.shape[0]
    if n < 2:
        raise ParameterError(f"need at least 2 points, got {n}")
    if not np.all(np.isfinite(pts)):
        raise DataError("phase points contain non-finite coordinates")
    p = {"euclidean": 2.0, "chebyshev": np.inf, "manhattan": 1.0}.get(metric)
    if p is None:
        raise ParameterError(f"unknown metric {metric!r}")
    if isinstance(order, str):
        visit = build_order(n, order, seed)
    else:
        visit = np.asarray(order, dtype=np.int64)
        if visit.shape != (n,) or not np.array_equal(np.sort(visit), np.arange(n)):
            raise ParameterError("explicit build order must be a permutation of node indices")

    tree = cKDTree(pts)
    k0 = min(n, 4 * links + 1)
    dist, idx = tree.query(pts, k=k0, p=p)
    dist = np.atleast_2d(dist).reshape(n, k0)
    idx = np.atleast_2d(idx).reshape(n, k0)

    adj = [set() for _ in range(n)]
    edges = []
    exhausted = 0
    for u in visit:
        u = int(u)
        k = k0
        d_row, j_row = dist[u], idx[u]
        while True:
            d_s, j_s = _ranked(d_row, j_row)
            nb = adj[u]
            chosen = []
            for dd, v in zip(d_s, j_s):
                v = int(v)
                if v == u or v in nb:
                    continue
                chosen.append((dd, v))
                if len(chosen) == links:
                    break
            if k >= n:
                break
            # unseen candidates are all at distance >= the farthest returned;
            # the selection is final only if it is full and strictly inside
            if len(chosen) == links and chosen[-1][0] < d_s[-1]:
                break
            k = min(n, 2 * k + len(nb))
            d_row, j_row = tree.query(pts[u], k=k, p=p)
            d_row, j_row = np.atleast_1d(d_row), np.atleast_1d(j_row)
        if len(chosen) < links:
            exhausted += 1
        for _, v in chosen:
            adj[u].add(v)
            adj[v].add(u)
            edges.append((u, v))
    return NNGraph.from_edges(n, np.array(edges, dtype=np.int64).reshape(-1, 2), visit, exhausted)


def write_edge_list(graph: NNGraph, path) -> Path:
    """One ``"u v"`` line per edge, 0-based, ``u < v``, lexicographic."""
    path = Path(path)
    path.write_text("".join(f"{u} {v}\n" for u, v in graph.edges))
    return path
