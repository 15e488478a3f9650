"""Canonical undirected graph view consumed by the metric kernels.

Vertices and adjacency are sorted at construction so every downstream
computation is independent of input declaration order. That property is
load-bearing: reports must not change when a network file permutes its
line or switch arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvariantViolation, UnknownElementError


@dataclass(frozen=True)
class GraphView:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    _index: dict = field(repr=False, compare=False, default=None)

    @staticmethod
    def build(vertices, edges) -> "GraphView":
        """Create a view from vertex and edge iterables.

        Edges are normalized to (low, high) pairs and deduplicated. Self
        loops and edges touching unknown vertices are rejected.
        """
        verts = tuple(sorted(set(vertices)))
        vset = set(verts)
        norm = set()
        for u, v in edges:
            if u == v:
                raise InvariantViolation(f"self loop at vertex {u}")
            if u not in vset or v not in vset:
                raise UnknownElementError(f"edge ({u}, {v}) references unknown vertex")
            norm.add((u, v) if u < v else (v, u))
        index = {v: i for i, v in enumerate(verts)}
        return GraphView(vertices=verts, edges=frozenset(norm), _index=index)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex: int) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise UnknownElementError(f"unknown vertex {vertex}") from None

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (indptr, indices) with sorted neighbors."""
        adj: list[list[int]] = [[] for _ in self.vertices]
        for u, v in self.edges:
            iu, iv = self._index[u], self._index[v]
            adj[iu].append(iv)
            adj[iv].append(iu)
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        for i, nbrs in enumerate(adj):
            nbrs.sort()
            indptr[i + 1] = indptr[i] + len(nbrs)
        indices = np.empty(int(indptr[-1]), dtype=np.int32)
        pos = 0
        for nbrs in adj:
            for w in nbrs:
                indices[pos] = w
                pos += 1
        return indptr, indices

    def laplacian(self) -> np.ndarray:
        """Dense Laplacian L = D - A as float64, rows in vertex order."""
        lap = np.zeros((self.n, self.n), dtype=np.float64)
        indptr, indices = self.csr
        for i in range(self.n):
            deg = int(indptr[i + 1] - indptr[i])
            lap[i, i] = float(deg)
            for k in range(indptr[i], indptr[i + 1]):
                lap[i, int(indices[k])] = -1.0
        return lap

    def components(self) -> list[frozenset[int]]:
        """Connected components as vertex-id sets, ordered by smallest member."""
        indptr, indices = self.csr
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            stack = [start]
            members = []
            while stack:
                u = stack.pop()
                members.append(self.vertices[u])
                for k in range(int(indptr[u]), int(indptr[u + 1])):
                    w = int(indices[k])
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(frozenset(members))
        comps.sort(key=min)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def subgraph(self, keep) -> "GraphView":
        """Induced subgraph on the given vertex ids."""
        keep = set(keep)
        return GraphView.build(
            (v for v in self.vertices if v in keep),
            ((u, v) for u, v in self.edges if u in keep and v in keep),
        )
