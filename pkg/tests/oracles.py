"""Slow, dense, independent reference implementations used as test oracles.

Nothing here imports the package's numerical code; each function works
from plain Python lists of simplices.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations

import networkx as nx
import numpy as np


def dense_boundaries(edges, triangles, n):
    """B1 (n x e) and B2 (e x t) built entry by entry."""
    edges = [tuple(e) for e in edges]
    pos = {e: i for i, e in enumerate(edges)}
    B1 = np.zeros((n, len(edges)))
    for j, (u, v) in enumerate(edges):
        B1[u, j] = -1.0
        B1[v, j] = 1.0
    B2 = np.zeros((len(edges), len(triangles)))
    for j, (u, v, w) in enumerate(triangles):
        B2[pos[(u, v)], j] = 1.0
        B2[pos[(v, w)], j] = 1.0
        B2[pos[(u, w)], j] = -1.0
    return B1, B2


def dense_laplacians(B1, B2):
    d2 = np.maximum(np.abs(B2).sum(axis=1), 1.0)
    d1 = 2.0 * (np.abs(B1) @ d2)
    L1 = B1.T @ B1 + B2 @ B2.T
    Ln = np.diag(d2) @ B1.T @ np.diag(1.0 / d1) @ B1 + B2 @ (np.eye(B2.shape[1]) / 3.0) @ B2.T @ np.diag(1.0 / d2)
    return L1, Ln, d2


def project(A, x, weights=None):
    """Orthogonal projection of ``x`` onto im(A) in the inner product diag(weights)."""
    if A.shape[1] == 0:
        return np.zeros_like(x)
    w = np.ones(len(x)) if weights is None else np.asarray(weights)
    s = np.sqrt(w)
    z = np.linalg.lstsq(s[:, None] * A, s * x, rcond=None)[0]
    return A @ z


def hodge_oracle(B1, B2, x, mode="unnormalized"):
    d2 = np.maximum(np.abs(B2).sum(axis=1), 1.0)
    if mode == "unnormalized":
        g = project(B1.T, x)
        c = project(B2, x)
    elif mode == "weighted":
        g = project(np.diag(d2) @ B1.T, x, 1.0 / d2)
        c = project(B2, x, 1.0 / d2)
    else:
        g = project(np.diag(np.sqrt(d2)) @ B1.T, x)
        c = project(np.diag(1.0 / np.sqrt(d2)) @ B2, x)
    return g, c, x - g - c


def epr_oracle(Ln, x, beta=2.5):
    return np.linalg.solve(beta * np.eye(len(Ln)) + Ln, (beta - 2.0) * x)


def kernel_dim(B1, B2):
    e = B1.shape[1]
    r1 = np.linalg.matrix_rank(B1) if B1.size else 0
    r2 = np.linalg.matrix_rank(B2) if B2.size else 0
    return e - r1 - r2


def _reachable(adj, s, t, skip):
    seen, queue = {s}, deque([s])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if {a, b} == skip or b in seen:
                continue
            if b == t:
                return True
            seen.add(b)
            queue.append(b)
    return False


def brute_bridges(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return {(u, v) for u, v in edges if not _reachable(adj, u, v, {u, v})}


def brute_tie_range(n, edges, edge):
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    G.remove_edge(*edge)
    try:
        return float(nx.shortest_path_length(G, *edge))
    except nx.NetworkXNoPath:
        return float("inf")


def betweenness_by_enumeration(n, edges):
    """Sum over ordered pairs of the fraction of shortest paths through each edge, / n(n-1)."""
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    score = {frozenset(e): 0.0 for e in edges}
    for s in range(n):
        for t in range(n):
            if s == t or not nx.has_path(G, s, t):
                continue
            paths = list(nx.all_shortest_paths(G, s, t))
            for p in paths:
                for a, b in zip(p, p[1:]):
                    score[frozenset((a, b))] += 1.0 / len(paths)
    return np.array([score[frozenset(e)] for e in edges]) / (n * (n - 1))


def constraint_by_loops(n, edges):
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)

    def p(i, j):
        return 1.0 / len(nbrs[i]) if j in nbrs[i] else 0.0

    def c(i, j):
        return (p(i, j) + sum(p(i, q) * p(q, j) for q in range(n) if q not in (i, j))) ** 2

    return np.array([(c(u, v) + c(v, u)) / 2 for u, v in edges])


def pagerank_power(A, alpha=0.85, v=None, iters=2000):
    A = np.asarray(A, dtype=float)
    n = len(A)
    deg = A.sum(axis=0)
    P = np.where(deg > 0, A / np.where(deg > 0, deg, 1.0), 1.0 / n)
    v = np.full(n, 1.0 / n) if v is None else v
    x = v.copy()
    for _ in range(iters):
        x = alpha * P @ x + (1 - alpha) * v
    return x


def graph_triangles(n, edges):
    es = {tuple(e) for e in edges}
    return [t for t in combinations(range(n), 3) if {(t[0], t[1]), (t[0], t[2]), (t[1], t[2])} <= es]
