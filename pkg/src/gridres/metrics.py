"""Topological metrics over a GraphView.

Four quantities drive the resilience score: algebraic connectivity (second
smallest Laplacian eigenvalue), average shortest path length, average
shortest-path betweenness, and diameter. Distances are hop counts; pair
sums run over unordered pairs. Disconnected graphs yield an infinite
average path and diameter (math.inf sentinel) and zero algebraic
connectivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .errors import InvariantViolation
from .graph import GraphView

# Eigenvalues this close to zero are treated as zero. Safely below the
# smallest positive lambda2 at feeder scale (path graph on N vertices has
# lambda2 ~ pi^2/N^2, about 1e-4 for N = 300).
ZERO_TOL = 1e-9

DEFAULT_BETWEENNESS_INV_CAP = 1.0


@dataclass(frozen=True)
class MetricVector:
    """Raw lambda2 plus the inverted forms of the other three metrics.

    Inverses put all four on a higher-is-healthier footing. A disconnected
    graph scores zero on avg_path_inv and diameter_inv; a graph with zero
    average betweenness (no vertex strictly between any pair) gets the
    configured cap instead of an infinite inverse.
    """

    lambda2: float
    avg_path_inv: float
    betweenness_inv: float
    diameter_inv: float


def _require(condition: bool, message: str):
    if not condition:
        raise InvariantViolation(message)


def algebraic_connectivity(g: GraphView) -> float:
    """Second smallest eigenvalue of L = D - A. Zero iff disconnected."""
    return fiedler_pair(g)[0]


def fiedler_pair(g: GraphView) -> tuple[float, tuple[float, ...]]:
    """Algebraic connectivity together with its eigenvector."""
    _require(g.n >= 2, "algebraic connectivity needs at least 2 vertices")
    w, vecs = kernels.jacobi_eigh(g.laplacian())
    lam = float(w[1])
    if abs(lam) < ZERO_TOL:
        lam = 0.0
    return lam, tuple(float(x) for x in vecs[:, 1])


def average_shortest_path(g: GraphView) -> float:
    """Mean hop distance over unordered pairs; math.inf if disconnected."""
    _require(g.n >= 2, "average shortest path needs at least 2 vertices")
    indptr, indices = g.csr
    total, pairs, _ = kernels.distance_stats(g.n, indptr, indices)
    all_pairs = g.n * (g.n - 1) // 2
    if pairs < all_pairs:
        return math.inf
    return 2.0 * total / (g.n * (g.n - 1))


def diameter(g: GraphView) -> float:
    """Largest hop distance over unordered pairs; math.inf if disconnected."""
    _require(g.n >= 2, "diameter needs at least 2 vertices")
    indptr, indices = g.csr
    _, pairs, maxd = kernels.distance_stats(g.n, indptr, indices)
    all_pairs = g.n * (g.n - 1) // 2
    if pairs < all_pairs:
        return math.inf
    return float(maxd)


def betweenness(g: GraphView, vertex: int) -> float:
    """Shortest-path betweenness of one vertex (unordered-pair convention)."""
    idx = g.index(vertex)
    indptr, indices = g.csr
    return float(kernels.betweenness_counts(g.n, indptr, indices)[idx])


def average_betweenness(g: GraphView) -> float:
    """Mean betweenness over all vertices."""
    _require(g.n >= 1, "average betweenness needs at least 1 vertex")
    if g.n == 1:
        return 0.0
    indptr, indices = g.csr
    counts = kernels.betweenness_counts(g.n, indptr, indices)
    total = 0.0
    for i in range(g.n):
        total += float(counts[i])
    return total / g.n


def metric_vector(
    g: GraphView, betweenness_inv_cap: float = DEFAULT_BETWEENNESS_INV_CAP
) -> MetricVector:
    """All four metrics in inverted form; see MetricVector.

    Runs each kernel once; the restoration search evaluates one vector per
    candidate switch subset.
    """
    _require(g.n >= 2, "metric vector needs at least 2 vertices")
    lam = algebraic_connectivity(g)
    indptr, indices = g.csr
    total, pairs, maxd = kernels.distance_stats(g.n, indptr, indices)
    connected = pairs == g.n * (g.n - 1) // 2
    # Same rounding path as 1 / average_shortest_path(g).
    apl_inv = 1.0 / (2.0 * total / (g.n * (g.n - 1))) if connected else 0.0
    cab = average_betweenness(g)
    return MetricVector(
        lambda2=lam,
        avg_path_inv=apl_inv,
        betweenness_inv=betweenness_inv_cap if cab == 0.0 else 1.0 / cab,
        diameter_inv=1.0 / maxd if connected else 0.0,
    )
