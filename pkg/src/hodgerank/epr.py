"""Personalized Edge PageRank and node PageRank."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .hodge import HodgeComponents, decompose_many
from .linalg import SolverError, cg
from .operators import LaplacianBundle


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class EprConfig:
    """Edge PageRank parameters.

    ``beta = 2 / alpha`` where ``alpha`` is the probability of following the
    lifted walk rather than teleporting; the default 2.5 is ``alpha = 0.8``.
    """

    beta: float = 2.5
    tol: float = 1e-10
    max_iter: int | None = None

    def __post_init__(self):
        if not self.beta > 2:
            raise ConfigError(f"beta must be > 2, got {self.beta}")
        if not self.tol > 0:
            raise ConfigError(f"tol must be positive, got {self.tol}")

    @property
    def alpha(self) -> float:
        return 2.0 / self.beta


@dataclass(frozen=True)
class EprResult:
    seed_edge: int
    pi: np.ndarray
    total: float
    components: HodgeComponents


def default_threads() -> int:
    env = os.environ.get("HODGERANK_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def edge_pagerank(x: np.ndarray, bundle: LaplacianBundle, cfg: EprConfig = EprConfig()) -> np.ndarray:
    """Solve ``(beta I + 𝓛1) pi = (beta - 2) x`` for each column of ``x``.

    The system is solved in symmetric coordinates, ``pi = D2^(1/2) y`` with
    ``(beta I + 𝓛1ˢ) y = (beta - 2) D2^(-1/2) x``, by conjugate gradient
    warm-started at ``(beta - 2)/beta · D2^(-1/2) x``.
    """
    X = np.asarray(x, dtype=float)
    vector = X.ndim == 1
    if vector:
        X = X[:, None]
    beta = cfg.beta
    s = np.sqrt(bundle.d2)[:, None]
    A = (beta * sp.identity(bundle.e, format="csr") + bundle.L1_sym).tocsr()
    rhs = (beta - 2.0) * X / s
    # ||residual in pi coordinates|| <= sqrt(max d2) ||residual in y coordinates||
    atol = 0.5 * cfg.tol / float(s.max())
    res = cg(A, rhs, x0=rhs / beta, rtol=0.0, atol=atol, maxiter=cfg.max_iter)
    P = s * res.x
    resid = np.linalg.norm((beta * P + bundle.L1_norm @ P) - (beta - 2.0) * X, axis=0)
    if np.any(resid >= cfg.tol):
        bad = int(np.argmax(resid))
        raise SolverError(
            f"Edge PageRank solve did not reach tol={cfg.tol:g} (column {bad}: residual {resid[bad]:.3e}, "
            f"{res.iterations} iterations)"
        )
    return P[:, 0] if vector else P


def _indicators(seeds, signs, e: int) -> np.ndarray:
    X = np.zeros((e, len(seeds)))
    X[np.asarray(seeds, dtype=int), np.arange(len(seeds))] = signs
    return X


def personalized_epr(
    seed: int, bundle: LaplacianBundle, cfg: EprConfig = EprConfig(), *, sign: int = 1, mode: str = "weighted"
) -> EprResult:
    """Edge PageRank seeded at a single oriented edge.

    ``sign=-1`` seeds the reverse orientation; the result flips sign and every
    norm is unchanged.
    """
    if not 0 <= seed < bundle.e:
        raise IndexError(f"seed edge {seed} out of range for {bundle.e} edges")
    x = np.zeros(bundle.e)
    x[seed] = sign
    pi = edge_pagerank(x, bundle, cfg)
    G, C, H = decompose_many(pi[:, None], bundle, mode)
    comps = HodgeComponents(G[:, 0], C[:, 0], H[:, 0], mode)
    return EprResult(seed, pi, float(np.linalg.norm(pi)), comps)


def epr_dynamical_many(X: np.ndarray, bundle: LaplacianBundle, cfg: EprConfig, k: int) -> np.ndarray:
    """``k`` steps of ``pi <- -(𝓛1/beta) pi + (beta - 2) x / beta`` from ``pi = 0``."""
    X = np.asarray(X, dtype=float)
    beta = cfg.beta
    drive = (beta - 2.0) * X / beta
    P = np.zeros_like(X)
    for _ in range(k):
        P = drive - (bundle.L1_norm @ P) / beta
    return P


def epr_dynamical(seed: int, bundle: LaplacianBundle, cfg: EprConfig, k: int, *, sign: int = 1) -> np.ndarray:
    """Iterate the Edge PageRank dynamical system seeded at one edge.

    The drive term is scaled by ``beta - 2`` so the fixed point is the
    solution returned by :func:`personalized_epr`.
    """
    x = np.zeros(bundle.e)
    x[seed] = sign
    return epr_dynamical_many(x[:, None], bundle, cfg, k)[:, 0]


EPR_COLUMNS = ("total", "grad", "curl", "harm")


def epr_all_edges(
    bundle: LaplacianBundle,
    cfg: EprConfig = EprConfig(),
    *,
    mode: str = "weighted",
    threads: int | None = None,
    chunk: int | None = None,
    norm: str = "standard",
) -> np.ndarray:
    """Edge PageRank summary for every seed edge.

    Returns an ``(e, 4)`` array with columns ``total, grad, curl, harm``:
    the 2-norm of each personalized vector and of its three Hodge components
    under ``mode``. ``norm="weighted"`` measures every vector with
    ``sqrt(vᵀ D2⁻¹ v)`` instead of the Euclidean norm. Seeds are processed in
    fixed chunks so the output does not depend on ``threads``.
    """
    if norm not in ("standard", "weighted"):
        raise ValueError(f"norm must be 'standard' or 'weighted', got {norm!r}")
    e = bundle.e
    scale = 1.0 / np.sqrt(bundle.d2)[:, None] if norm == "weighted" else 1.0
    if chunk is None:
        chunk = int(np.clip(4_000_000 // max(e, 1), 1, 256))
    starts = list(range(0, e, chunk))
    out = np.empty((e, 4))

    def work(start):
        seeds = np.arange(start, min(start + chunk, e))
        X = _indicators(seeds, 1.0, e)
        try:
            P = edge_pagerank(X, bundle, cfg)
        except SolverError as exc:
            raise SolverError(f"seeds {seeds[0]}..{seeds[-1]}: {exc}") from None
        G, C, H = decompose_many(P, bundle, mode)
        return start, np.column_stack([np.linalg.norm(scale * M, axis=0) for M in (P, G, C, H)])

    threads = default_threads() if threads is None else max(1, threads)
    if threads == 1 or len(starts) == 1:
        results = map(work, starts)
    else:
        pool = ThreadPoolExecutor(max_workers=threads)
        results = pool.map(work, starts)
    for start, block in results:
        out[start : start + len(block)] = block
    if threads != 1 and len(starts) > 1:
        pool.shutdown()
    return out


def _as_adjacency(graph) -> sp.csr_matrix:
    if sp.issparse(graph):
        return sp.csr_matrix(graph)
    return graph.adjacency()


def node_pagerank(graph, alpha: float = 0.85, preference=None) -> np.ndarray:
    """Solve ``(I - alpha P) pi = (1 - alpha) v`` with ``P`` column-stochastic.

    ``graph`` is a :class:`~hodgerank.complex.Graph` or a sparse adjacency
    matrix. ``preference`` defaults to uniform and may be an ``(n, k)`` block
    of distributions, solved against one factorization. Columns of ``P`` for
    isolated nodes are uniform.
    """
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    A = _as_adjacency(graph)
    n = A.shape[0]
    if preference is None:
        V = np.full(n, 1.0 / n)
    else:
        V = np.asarray(preference, dtype=float)
        if V.shape[0] != n or np.any(V < 0) or not np.allclose(V.sum(axis=0), 1.0):
            raise ValueError("preference must be a distribution over the nodes")
    deg = np.asarray(A.sum(axis=0)).ravel()
    dangling = deg == 0
    P = A @ sp.diags(np.where(dangling, 0.0, 1.0 / np.where(dangling, 1.0, deg)))
    if dangling.any():
        cols = np.flatnonzero(dangling)
        fill = sp.csr_matrix(
            (np.full(n * len(cols), 1.0 / n), (np.tile(np.arange(n), len(cols)), np.repeat(cols, n))), shape=(n, n)
        )
        P = P + fill
    M = (sp.identity(n, format="csc") - alpha * P).tocsc()
    lu = spla.splu(M)
    return lu.solve((1.0 - alpha) * V)
