"""Simplicial complexes of dimension at most two built from group interactions.

Nodes are relabeled to ``0..n-1`` in increasing order of their external
identifiers, so the lexicographic orientation of every simplex agrees with the
orientation induced by the original ids.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp


class ComplexError(ValueError):
    """Raised for malformed interaction input."""


@dataclass(frozen=True)
class SimplicialComplex:
    """Immutable 2-dimensional simplicial complex.

    ``labels[i]`` is the external identifier of internal node ``i``.
    ``edges`` is an ``(e, 2)`` array and ``triangles`` a ``(t, 3)`` array of
    internal node indices, each row strictly increasing and the rows sorted
    lexicographically.
    """

    labels: np.ndarray
    edges: np.ndarray
    triangles: np.ndarray
    edge_index: dict = field(repr=False, compare=False)
    triangle_index: dict = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def t(self) -> int:
        return len(self.triangles)

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n)

    @property
    def density(self) -> float:
        """Edge density ``e / C(n, 2)``."""
        pairs = self.n * (self.n - 1) / 2
        return self.e / pairs if pairs else 0.0

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (
            np.array_equal(self.labels, other.labels)
            and np.array_equal(self.edges, other.edges)
            and np.array_equal(self.triangles, other.triangles)
        )

    def __hash__(self):
        return hash((self.labels.tobytes(), self.edges.tobytes(), self.triangles.tobytes()))

    def index_of(self, label) -> int:
        """Internal index of an external node identifier."""
        i = int(np.searchsorted(self.labels, label))
        if i >= self.n or self.labels[i] != label:
            raise KeyError(label)
        return i

    def edge_id(self, u, v, *, external: bool = False) -> tuple[int, int]:
        """Return ``(index, sign)`` of the edge joining ``u`` and ``v``.

        ``sign`` is ``-1`` when ``(u, v)`` runs against the reference
        orientation (i.e. ``u > v``).
        """
        if external:
            u, v = self.index_of(u), self.index_of(v)
        key = (min(u, v), max(u, v))
        return self.edge_index[key], (1 if u < v else -1)

    def edge_labels(self) -> np.ndarray:
        """Edges expressed with external node identifiers."""
        return self.labels[self.edges] if self.e else np.empty((0, 2), self.labels.dtype)

    def triangle_labels(self) -> np.ndarray:
        return self.labels[self.triangles] if self.t else np.empty((0, 3), self.labels.dtype)

    def simplices(self) -> list[tuple]:
        """Edges then triangles, in external ids."""
        return [tuple(int(a) for a in s) for s in self.edge_labels()] + [
            tuple(int(a) for a in s) for s in self.triangle_labels()
        ]

    def summary(self) -> str:
        return f"nodes={self.n} edges={self.e} triangles={self.t}"


def _from_parts(labels: np.ndarray, edges: Iterable, triangles: Iterable) -> SimplicialComplex:
    edges = sorted(set(edges))
    triangles = sorted(set(triangles))
    e_arr = np.array(edges, dtype=np.int64).reshape(-1, 2)
    t_arr = np.array(triangles, dtype=np.int64).reshape(-1, 3)
    return SimplicialComplex(
        labels=labels,
        edges=e_arr,
        triangles=t_arr,
        edge_index={s: i for i, s in enumerate(edges)},
        triangle_index={s: i for i, s in enumerate(triangles)},
    )


def build_complex(interactions: Iterable[Iterable[int]], max_dim: int = 2) -> SimplicialComplex:
    """Build the complex generated by a list of interactions.

    Every pair within an interaction becomes an edge; when ``max_dim == 2``
    every triple within an interaction of size three or more becomes a
    triangle. Duplicate interactions collapse.

    Raises
    ------
    ComplexError
        If an interaction has fewer than two distinct nodes. The message names
        the offending (1-based) record.
    """
    if max_dim not in (1, 2):
        raise ValueError("max_dim must be 1 or 2")
    records = []
    for lineno, inter in enumerate(interactions, start=1):
        nodes = sorted(set(inter))
        if len(nodes) < 2:
            raise ComplexError(f"record {lineno}: interaction {list(inter)!r} has fewer than 2 distinct nodes")
        records.append(tuple(nodes))

    labels = np.array(sorted({u for r in records for u in r}), dtype=np.int64)
    relabel = {int(u): i for i, u in enumerate(labels)}
    edges, triangles = set(), set()
    for r in set(records):
        idx = [relabel[u] for u in r]
        edges.update(combinations(idx, 2))
        if max_dim == 2 and len(idx) >= 3:
            triangles.update(combinations(idx, 3))
    return _from_parts(labels, edges, triangles)


def _neighbor_sets(c: SimplicialComplex) -> list[set]:
    nbrs = [set() for _ in range(c.n)]
    for u, v in c.edges:
        nbrs[u].add(int(v))
        nbrs[v].add(int(u))
    return nbrs


def fill_triangles(c: SimplicialComplex) -> SimplicialComplex:
    """Return the clique closure: every graph triangle becomes a 2-simplex."""
    nbrs = _neighbor_sets(c)
    tris = set()
    for u, v in c.edges:
        u, v = int(u), int(v)
        for w in nbrs[u] & nbrs[v]:
            if w > v:
                tris.add((u, v, w))
    return _from_parts(c.labels, map(tuple, c.edges.tolist()), tris)


@dataclass(frozen=True)
class Graph:
    """Underlying graph of a complex: nodes ``0..n-1`` with sorted edge list."""

    n: int
    edges: np.ndarray
    neighbors: list = field(repr=False)

    @property
    def e(self) -> int:
        return len(self.edges)

    def degree(self) -> np.ndarray:
        return np.array([len(nb) for nb in self.neighbors], dtype=np.int64)

    def adjacency(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency matrix."""
        if self.e == 0:
            return sp.csr_matrix((self.n, self.n))
        u, v = self.edges[:, 0], self.edges[:, 1]
        data = np.ones(2 * self.e)
        return sp.csr_matrix((data, (np.r_[u, v], np.r_[v, u])), shape=(self.n, self.n))


def graph_from_edges(n: int, edges: Sequence[Sequence[int]]) -> Graph:
    """Simple undirected graph on ``0..n-1``; edges are normalized to ``u < v``."""
    es = sorted({(min(u, v), max(u, v)) for u, v in edges if u != v})
    nbrs = [[] for _ in range(n)]
    for u, v in es:
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(n, np.array(es, dtype=np.int64).reshape(-1, 2), [sorted(nb) for nb in nbrs])


def underlying_graph(c: SimplicialComplex) -> Graph:
    """Drop the triangles and keep nodes and edges."""
    return graph_from_edges(c.n, c.edges.tolist())


def to_text(c: SimplicialComplex) -> str:
    """Serialize as a summary header followed by one simplex per line."""
    lines = [c.summary()]
    lines += [" ".join(str(a) for a in s) for s in c.simplices()]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> SimplicialComplex:
    """Inverse of :func:`to_text`."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("nodes="):
        raise ComplexError("missing 'nodes=... edges=... triangles=...' header")
    header = dict(tok.split("=") for tok in lines[0].split())
    records = []
    for k, ln in enumerate(lines[1:], start=2):
        try:
            records.append([int(tok) for tok in ln.split()])
        except ValueError as exc:
            raise ComplexError(f"line {k}: {exc}") from None
    c = build_complex(records, max_dim=2)
    if (c.n, c.e, c.t) != (int(header["nodes"]), int(header["edges"]), int(header["triangles"])):
        raise ComplexError(f"header {lines[0]!r} disagrees with body ({c.summary()})")
    return c
