"""Global bridges, local bridges and tie range."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .complex import Graph

CLASSES = ("global", "local", "neither")


@dataclass(frozen=True)
class BridgeLabel:
    """Per-edge bridge class and tie range (``inf`` for global bridges)."""

    labels: np.ndarray
    tie_range: np.ndarray

    def codes(self) -> np.ndarray:
        """Integer class codes in the order of :data:`CLASSES`."""
        lookup = {name: i for i, name in enumerate(CLASSES)}
        return np.array([lookup[s] for s in self.labels], dtype=np.int64)

    def counts(self) -> dict[str, int]:
        return {name: int(np.sum(self.labels == name)) for name in CLASSES}


def to_networkx(graph: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(graph.n))
    G.add_edges_from(map(tuple, graph.edges.tolist()))
    return G


def global_bridges(graph: Graph) -> set[tuple[int, int]]:
    """Cut edges, as ``(u, v)`` pairs with ``u < v``."""
    return {(min(u, v), max(u, v)) for u, v in nx.bridges(to_networkx(graph))}


def tie_range(graph: Graph, edge) -> float:
    """Shortest ``u``-``v`` path length once the edge itself is removed."""
    u, v = int(edge[0]), int(edge[1])
    dist = {u: 0}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        for b in graph.neighbors[a]:
            if b in dist or (a == u and b == v) or (a == v and b == u):
                continue
            if b == v:
                return float(dist[a] + 1)
            dist[b] = dist[a] + 1
            queue.append(b)
    return math.inf


def classify_edges(graph: Graph) -> BridgeLabel:
    """Label each edge ``global``, ``local`` or ``neither``.

    Edges whose endpoints share a neighbor are ``neither`` (tie range 2);
    cut edges are ``global``; the remaining edges are ``local`` and get their
    tie range by a masked breadth-first search.
    """
    cut = global_bridges(graph)
    nbrs = [set(nb) for nb in graph.neighbors]
    labels, ranges = [], []
    for u, v in graph.edges.tolist():
        if (u, v) in cut:
            labels.append("global")
            ranges.append(math.inf)
        elif nbrs[u] & nbrs[v]:
            labels.append("neither")
            ranges.append(2.0)
        else:
            labels.append("local")
            ranges.append(tie_range(graph, (u, v)))
    return BridgeLabel(np.array(labels, dtype=object), np.array(ranges, dtype=float))
