"""Exact census of connected 4-node induced subgraphs."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from itertools import combinations

import numba
import numpy as np

from .errors import ParameterError

__all__ = [
    "Shape",
    "SHAPES",
    "MotifLabelMap",
    "DEFAULT_LABEL_MAP",
    "MotifCounts",
    "shape_of_edges",
    "classify_quad",
    "motif_census",
    "brute_force_census",
    "rank_pattern",
    "validate_pattern",
]


class Shape(enum.IntEnum):
    PATH = 0
    STAR = 1
    CYCLE = 2
    TADPOLE = 3
    DIAMOND = 4
    CLIQUE = 5


SHAPES = tuple(Shape)
LABELS = "ABCDEF"


def shape_of_edges(edge_count: int, has_triangle: bool, max_degree: int):
    """Shape of a connected 4-node graph from its invariants.

    Returns None for edge counts that cannot be connected (fewer than 3).
    """
    if edge_count == 3:
        # a 3-edge 4-node graph with a triangle leaves a node isolated
        if has_triangle:
            return None
        return Shape.STAR if max_degree == 3 else Shape.PATH
    if edge_count == 4:
        return Shape.TADPOLE if has_triangle else Shape.CYCLE
    if edge_count == 5:
        return Shape.DIAMOND
    if edge_count == 6:
        return Shape.CLIQUE
    return None


@dataclass(frozen=True)
class MotifLabelMap:
    """Bijection from the letters A..F to shapes."""

    mapping: tuple = (Shape.PATH, Shape.STAR, Shape.TADPOLE, Shape.DIAMOND, Shape.CYCLE, Shape.CLIQUE)

    def __post_init__(self):
        m = tuple(Shape(s) if not isinstance(s, str) else Shape[s.upper()] for s in self.mapping)
        if len(m) != 6 or set(m) != set(Shape):
            raise ParameterError("label map must assign each of A..F to a distinct shape")
        object.__setattr__(self, "mapping", m)

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(tuple(d[c] for c in LABELS))
        except KeyError as exc:
            raise ParameterError(f"label map missing label {exc}") from None

    def to_dict(self):
        return {c: s.name.lower() for c, s in zip(LABELS, self.mapping)}

    def shape(self, label: str) -> Shape:
        return self.mapping[LABELS.index(label)]

    def label(self, shape) -> str:
        return LABELS[self.mapping.index(Shape(shape))]


DEFAULT_LABEL_MAP = MotifLabelMap()


@dataclass(frozen=True)
class MotifCounts:
    counts: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.counts)
        if len(c) != 6 or any(x < 0 for x in c):
            raise ParameterError("motif counts must be six non-negative integers")
        object.__setattr__(self, "counts", c)

    @property
    def total(self):
        return sum(self.counts)

    def __getitem__(self, shape):
        return self.counts[int(Shape(shape))]

    def frequencies(self) -> np.ndarray:
        tot = self.total
        c = np.array(self.counts, dtype=float)
        return c / tot if tot else c

    def by_label(self, label_map=DEFAULT_LABEL_MAP) -> dict:
        return {c: self[label_map.shape(c)] for c in LABELS}

    def to_dict(self):
        return {s.name.lower(): self.counts[s] for s in Shape}


def _edge_set(graph):
    if hasattr(graph, "has_edge"):
        return graph.has_edge
    es = {frozenset(e) for e in graph}
    return lambda u, v: frozenset((u, v)) in es


def classify_quad(graph, nodes):
    """Shape of the subgraph induced on four distinct nodes, or None if
    that subgraph is disconnected."""
    nodes = [int(v) for v in nodes]
    if len(nodes) != 4 or len(set(nodes)) != 4:
        raise ParameterError(f"need 4 distinct nodes, got {nodes}")
    n = getattr(graph, "node_count", None)
    if n is not None and any(v < 0 or v >= n for v in nodes):
        raise ParameterError(f"node index out of range in {nodes}")
    has = _edge_set(graph)
    present = [(a, b) for a, b in combinations(range(4), 2) if has(nodes[a], nodes[b])]
    deg = [0] * 4
    for a, b in present:
        deg[a] += 1
        deg[b] += 1
    if min(deg) == 0:
        return None
    pset = set(present)
    tri = any({(a, b), (a, c), (b, c)} <= pset for a, b, c in combinations(range(4), 3))
    return shape_of_edges(len(present), tri, max(deg))


@numba.njit(cache=True, inline="always")
def _adjacent(indptr, indices, u, v):
    lo = indptr[u]
    hi = indptr[u + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        w = indices[mid]
        if w < v:
            lo = mid + 1
        elif w > v:
            hi = mid
        else:
            return True
    return False


@numba.njit(cache=True)
def _classify4(indptr, indices, a, b, c, d):
    q = np.empty(4, np.int64)
    q[0] = a
    q[1] = b
    q[2] = c
    q[3] = d
    deg = np.zeros(4, np.int64)
    m = 0
    adj = np.zeros((4, 4), np.bool_)
    for i in range(4):
        for j in range(i + 1, 4):
            if _adjacent(indptr, indices, q[i], q[j]):
                adj[i, j] = True
                adj[j, i] = True
                deg[i] += 1
                deg[j] += 1
                m += 1
    if m == 3:
        return 1 if deg.max() == 3 else 0
    if m == 4:
        # a 4-edge graph with a triangle has a degree-3 node; a 4-cycle does not
        return 3 if deg.max() == 3 else 2
    if m == 5:
        return 4
    return 5


@numba.njit(cache=True)
def _census_root(indptr, indices, v, out):
    # Enumerate connected 4-sets whose smallest node is v, each exactly once,
    # by exclusive-neighborhood extension.
    n1 = indptr[v + 1] - indptr[v]
    ext1 = np.empty(n1, np.int64)
    k1 = 0
    for p in range(indptr[v], indptr[v + 1]):
        u = indices[p]
        if u > v:
            ext1[k1] = u
            k1 += 1
    for i in range(k1):
        w = ext1[i]
        # ext2 = remaining ext1 plus exclusive neighbors of w w.r.t. {v}
        dw = indptr[w + 1] - indptr[w]
        ext2 = np.empty(k1 - i - 1 + dw, np.int64)
        k2 = 0
        for t in range(i + 1, k1):
            ext2[k2] = ext1[t]
            k2 += 1
        for p in range(indptr[w], indptr[w + 1]):
            u = indices[p]
            if u > v and not _adjacent(indptr, indices, v, u):
                ext2[k2] = u
                k2 += 1
        for j in range(k2):
            x = ext2[j]
            dx = indptr[x + 1] - indptr[x]
            ext3 = np.empty(k2 - j - 1 + dx, np.int64)
            k3 = 0
            for t in range(j + 1, k2):
                ext3[k3] = ext2[t]
                k3 += 1
            for p in range(indptr[x], indptr[x + 1]):
                u = indices[p]
                if u > v and u != w and not _adjacent(indptr, indices, v, u) and not _adjacent(indptr, indices, w, u):
                    ext3[k3] = u
                    k3 += 1
            for t in range(k3):
                out[_classify4(indptr, indices, v, w, x, ext3[t])] += 1


@numba.njit(cache=True, parallel=True)
def _census(indptr, indices, n):
    per_root = np.zeros((n, 6), np.int64)
    for v in numba.prange(n):
        _census_root(indptr, indices, np.int64(v), per_root[v])
    return per_root.sum(axis=0)


def _csr(graph):
    if hasattr(graph, "indptr"):
        return graph.node_count, graph.indptr, graph.indices
    raise ParameterError("motif_census expects an NNGraph-like object with CSR arrays")


def motif_census(graph) -> MotifCounts:
    """Count connected induced 4-node subgraphs by shape.

    Every connected 4-set is reached exactly once from its smallest node by
    exclusive-neighborhood extension and classified from its induced edges.
    Roots run in parallel with per-root accumulators summed at the end.
    """
    n, indptr, indices = _csr(graph)
    if n < 4:
        return MotifCounts((0,) * 6)
    with warnings.catch_warnings():
        # numba probes threading layers on first use and warns about old TBB
        warnings.filterwarnings("ignore", message=".*TBB.*", category=numba.NumbaWarning)
        counts = _census(np.ascontiguousarray(indptr, np.int64), np.ascontiguousarray(indices, np.int64), n)
    return MotifCounts(tuple(int(c) for c in counts))


def brute_force_census(n: int, edges) -> MotifCounts:
    """Reference census over all ``C(n, 4)`` quadruples (small graphs only)."""
    es = {frozenset((int(u), int(v))) for u, v in edges}
    counts = [0] * 6
    for q in combinations(range(n), 4):
        present = [(a, b) for a, b in combinations(q, 2) if frozenset((a, b)) in es]
        if len(present) < 3:
            continue
        deg = {v: 0 for v in q}
        for a, b in present:
            deg[a] += 1
            deg[b] += 1
        if 0 in deg.values():
            continue
        pset = {frozenset(e) for e in present}
        tri = any(
            {frozenset((a, b)), frozenset((a, c)), frozenset((b, c))} <= pset for a, b, c in combinations(q, 3)
        )
        shape = shape_of_edges(len(present), tri, max(deg.values()))
        counts[shape] += 1
    return MotifCounts(tuple(counts))


def validate_pattern(pattern: str) -> str:
    if len(pattern) != 6 or set(pattern) != set(LABELS):
        raise ParameterError(f"{pattern!r} is not a permutation of {LABELS}")
    return pattern


def rank_pattern(counts, label_map: MotifLabelMap = DEFAULT_LABEL_MAP) -> str:
    """Labels ordered by descending count, ties alphabetical.

    ``counts`` may be a `MotifCounts` or any length-6 sequence of numbers
    indexed by `Shape` (e.g. mean relative frequencies). Zero-count labels
    sort to the tail alphabetically by the same rule.
    """
    vals = counts.counts if isinstance(counts, MotifCounts) else tuple(counts)
    if len(vals) != 6:
        raise ParameterError("need six counts")
    by_label = [(float(vals[int(label_map.shape(c))]), c) for c in LABELS]
    by_label.sort(key=lambda t: (-t[0], t[1]))
    return "".join(c for _, c in by_label)
