"""Per-edge features: Edge PageRank summaries and graph baselines."""
from __future__ import annotations

import io
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
import scipy.sparse as sp

from .complex import Graph, SimplicialComplex, underlying_graph
from .epr import EprConfig, epr_all_edges, node_pagerank
from .hodge import decompose_many
from .operators import LaplacianBundle, boundary_operators, hodge_laplacian
from .structure import to_networkx

FEATURE_SETS = {
    "epr": ("total",),
    "epr-components": ("grad", "curl", "harm"),
    "embeddedness": ("embeddedness",),
    "local": ("degree_sum", "overlap", "clustering_sum"),
    "node-pr": ("pr_mean", "line_pr", "ppr_norm_mean", "line_ppr_norm"),
    "constraint": ("constraint",),
    "betweenness": ("betweenness",),
    "indicator-hodge": ("ind_grad", "ind_curl", "ind_harm"),
}


@dataclass
class FeatureTable:
    """Named feature columns, one row per edge (rows follow ``edges``)."""

    edges: np.ndarray
    columns: dict[str, np.ndarray] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def names(self) -> list[str]:
        return list(self.columns)

    def add(self, name: str, values) -> None:
        values = np.asarray(values, dtype=float)
        if values.shape != (len(self.edges),):
            raise ValueError(f"column {name!r} has shape {values.shape}, expected ({len(self.edges)},)")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"column {name!r} has missing or non-finite values")
        self.columns[name] = values

    def matrix(self, names=None) -> np.ndarray:
        names = self.names if names is None else list(names)
        if not names:
            return np.empty((len(self.edges), 0))
        return np.column_stack([self.columns[n] for n in names])

    def select(self, names) -> "FeatureTable":
        return FeatureTable(self.edges, {n: self.columns[n] for n in names}, dict(self.meta))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(["u", "v", *self.names]) + "\n")
        M = self.matrix()
        for (u, v), row in zip(self.edges.tolist(), M):
            buf.write(",".join([str(u), str(v), *(f"{x:.12g}" for x in row)]) + "\n")
        return buf.getvalue()


def _edge_lookup(M: sp.spmatrix, edges: np.ndarray) -> np.ndarray:
    if not len(edges):
        return np.zeros(0)
    return np.asarray(sp.csr_matrix(M)[edges[:, 0], edges[:, 1]]).ravel()


def embeddedness(graph: Graph) -> np.ndarray:
    """Number of common neighbors of each edge's endpoints."""
    A = graph.adjacency()
    return _edge_lookup(A @ A, graph.edges)


def local_baseline(graph: Graph) -> dict[str, np.ndarray]:
    """Degree sum, unweighted overlap and clustering-coefficient sum per edge."""
    A = graph.adjacency()
    deg = graph.degree().astype(float)
    common = _edge_lookup(A @ A, graph.edges)
    u, v = graph.edges[:, 0], graph.edges[:, 1]
    denom = deg[u] + deg[v] - common - 2.0
    overlap = np.divide(common, denom, out=np.zeros_like(common), where=denom > 0)

    tri = np.asarray((A @ A).multiply(A).sum(axis=1)).ravel() / 2.0
    pairs = deg * (deg - 1.0)
    clust = np.divide(2.0 * tri, pairs, out=np.zeros_like(tri), where=pairs > 0)
    return {"degree_sum": deg[u] + deg[v], "overlap": overlap, "clustering_sum": clust[u] + clust[v]}


def network_constraint(graph: Graph) -> np.ndarray:
    """Symmetrized edge constraint ``(c_ij + c_ji) / 2``.

    ``c_ij = (p_ij + sum_q p_iq p_qj)^2`` with ``p_ij = 1 / deg(i)``.
    """
    A = graph.adjacency()
    deg = graph.degree().astype(float)
    P = sp.diags(np.divide(1.0, deg, out=np.zeros_like(deg), where=deg > 0)) @ A
    Q = (P + P @ P).tocsr()
    u, v = graph.edges[:, 0], graph.edges[:, 1]
    c_uv = _edge_lookup(Q, graph.edges) ** 2
    c_vu = _edge_lookup(Q, np.column_stack([v, u])) ** 2
    return (c_uv + c_vu) / 2.0


def edge_betweenness(graph: Graph) -> np.ndarray:
    """Fraction of ordered node pairs' shortest paths through each edge.

    Normalized by ``n (n - 1)``.
    """
    n = graph.n
    if n < 2 or graph.e == 0:
        return np.zeros(graph.e)
    raw = nx.edge_betweenness_centrality(to_networkx(graph), normalized=False)
    # networkx counts unordered pairs for undirected graphs
    vals = np.array([raw[(u, v)] if (u, v) in raw else raw[(v, u)] for u, v in graph.edges.tolist()])
    return 2.0 * vals / (n * (n - 1))


def line_graph_adjacency(graph: Graph) -> sp.csr_matrix:
    """Adjacency of the line graph: edges adjacent iff they share an endpoint."""
    e = graph.e
    inc = sp.csr_matrix((np.ones(2 * e), (graph.edges.ravel(), np.repeat(np.arange(e), 2))), shape=(graph.n, e))
    L = (inc.T @ inc).tolil()
    L.setdiag(0)
    L = L.tocsr()
    L.eliminate_zeros()
    return L


def _ppr_norms(adj, alpha: float, block: int = 512) -> np.ndarray:
    n = adj.shape[0]
    out = np.empty(n)
    for s in range(0, n, block):
        idx = np.arange(s, min(s + block, n))
        V = np.zeros((n, len(idx)))
        V[idx, np.arange(len(idx))] = 1.0
        out[idx] = np.linalg.norm(node_pagerank(adj, alpha, V), axis=0)
    return out


def node_pagerank_variants(graph: Graph, alpha: float = 0.85) -> dict[str, np.ndarray]:
    """Edge features from node PageRank on the graph and on its line graph."""
    u, v = graph.edges[:, 0], graph.edges[:, 1]
    A = graph.adjacency()
    pr = node_pagerank(A, alpha)
    ppr = _ppr_norms(A, alpha)
    LG = line_graph_adjacency(graph)
    return {
        "pr_mean": (pr[u] + pr[v]) / 2.0,
        "line_pr": node_pagerank(LG, alpha),
        "ppr_norm_mean": (ppr[u] + ppr[v]) / 2.0,
        "line_ppr_norm": _ppr_norms(LG, alpha),
    }


def epr_features(
    bundle: LaplacianBundle, cfg: EprConfig = EprConfig(), *, mode: str = "weighted", threads: int | None = None
) -> dict[str, np.ndarray]:
    """Total Edge PageRank norm and its three component norms per seed edge."""
    M = epr_all_edges(bundle, cfg, mode=mode, threads=threads)
    return {"total": M[:, 0], "grad": M[:, 1], "curl": M[:, 2], "harm": M[:, 3]}


def indicator_hodge(bundle: LaplacianBundle, *, mode: str = "weighted", block: int = 256) -> dict[str, np.ndarray]:
    """Component norms of the Hodge decomposition of each edge indicator."""
    e = bundle.e
    out = np.empty((e, 3))
    for s in range(0, e, block):
        idx = np.arange(s, min(s + block, e))
        X = np.zeros((e, len(idx)))
        X[idx, np.arange(len(idx))] = 1.0
        G, C, H = decompose_many(X, bundle, mode)
        out[idx] = np.column_stack([np.linalg.norm(M, axis=0) for M in (G, C, H)])
    return {"ind_grad": out[:, 0], "ind_curl": out[:, 1], "ind_harm": out[:, 2]}


def build_features(
    c: SimplicialComplex,
    sets=("epr-components",),
    *,
    cfg: EprConfig = EprConfig(),
    mode: str = "weighted",
    alpha: float = 0.85,
    threads: int | None = None,
) -> FeatureTable:
    """Assemble the named feature sets into one table (columns in request order)."""
    unknown = [s for s in sets if s not in FEATURE_SETS]
    if unknown:
        raise ValueError(f"unknown feature set(s) {unknown}; choose from {sorted(FEATURE_SETS)}")
    graph = underlying_graph(c)
    table = FeatureTable(
        c.edge_labels(), meta={"feature_sets": list(sets), "beta": cfg.beta, "alpha": alpha, "mode": mode}
    )
    bundle = None
    cols: dict[str, np.ndarray] = {}
    for name in sets:
        if name in ("epr", "epr-components", "indicator-hodge") and bundle is None:
            bundle = hodge_laplacian(boundary_operators(c))
        if name in ("epr", "epr-components"):
            if "total" not in cols:
                cols.update(epr_features(bundle, cfg, mode=mode, threads=threads))
        elif name == "indicator-hodge":
            cols.update(indicator_hodge(bundle, mode=mode))
        elif name == "embeddedness":
            cols["embeddedness"] = embeddedness(graph)
        elif name == "local":
            cols.update(local_baseline(graph))
        elif name == "node-pr":
            cols.update(node_pagerank_variants(graph, alpha))
        elif name == "constraint":
            cols["constraint"] = network_constraint(graph)
        elif name == "betweenness":
            cols["betweenness"] = edge_betweenness(graph)
    for name in sets:
        for col in FEATURE_SETS[name]:
            if col not in table.columns:
                table.add(col, cols[col])
    return table
