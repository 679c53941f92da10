"""Hodge decomposition of edge flows into gradient, curl and harmonic parts.

Three conventions are supported:

``unnormalized``
    gradient in im(B1ᵀ), curl in im(B2), orthogonal in the standard inner
    product; the harmonic part lies in ker(L1).
``weighted``
    gradient in im(D2 B1ᵀ), curl in im(B2), orthogonal in the inner product
    ``<u, v> = uᵀ D2⁻¹ v``; the harmonic part lies in ker(𝓛1).
``symmetric``
    gradient in im(D2^(1/2) B1ᵀ), curl in im(D2^(-1/2) B2), orthogonal in the
    standard inner product; the harmonic part lies in ker(𝓛1ˢ).
"""
from __future__ import annotations

import threading
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from scipy.linalg import qr
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import splu

from .operators import LaplacianBundle

MODES = ("unnormalized", "weighted", "symmetric")


@dataclass(frozen=True)
class HodgeComponents:
    gradient: np.ndarray
    curl: np.ndarray
    harmonic: np.ndarray
    mode: str

    @property
    def norms(self) -> tuple[float, float, float]:
        return component_norms(self)

    def total(self) -> np.ndarray:
        return self.gradient + self.curl + self.harmonic


def component_norms(h: HodgeComponents) -> tuple[float, float, float]:
    """Euclidean norms ``(‖gradient‖, ‖curl‖, ‖harmonic‖)``."""
    return (
        float(np.linalg.norm(h.gradient)),
        float(np.linalg.norm(h.curl)),
        float(np.linalg.norm(h.harmonic)),
    )


def inner(u: np.ndarray, v: np.ndarray, bundle: LaplacianBundle, mode: str) -> float:
    """Inner product under which the ``mode`` decomposition is orthogonal."""
    if mode == "weighted":
        return float(u @ (v / bundle.d2))
    return float(u @ v)


def independent_columns(M: sp.spmatrix, tol: float = 1e-9) -> np.ndarray:
    """Sorted indices of a maximal linearly independent set of columns of ``M``.

    Columns are grouped into blocks that share no row; each block is reduced
    by a dense QR with column pivoting.
    """
    M = sp.csc_matrix(M)
    k = M.shape[1]
    if k == 0:
        return np.zeros(0, dtype=np.int64)
    pattern = abs(M)
    _, block = connected_components(pattern.T @ pattern, directed=False)
    keep = []
    for b in np.unique(block):
        cols = np.flatnonzero(block == b)
        sub = M[:, cols]
        rows = np.unique(sub.indices)
        D = sub[rows].toarray()
        R, piv = qr(D, mode="r", pivoting=True)
        diag = np.abs(np.diag(R))
        rank = int(np.sum(diag > tol * max(diag[0], 1.0) * max(D.shape)))
        keep.append(cols[piv[:rank]])
    return np.sort(np.concatenate(keep))


class _SPDSolver:
    """Sparse LU of a positive definite matrix with iterative refinement."""

    def __init__(self, A: sp.spmatrix):
        self.A = sp.csc_matrix(A)
        self.lu = splu(self.A) if self.A.shape[0] else None
        self._lock = threading.Lock()

    def _lu_solve(self, b):
        # SuperLU objects are not documented as thread-safe
        with self._lock:
            return self.lu.solve(b)

    def solve(self, rhs: np.ndarray, rtol: float) -> np.ndarray:
        if self.lu is None:
            return np.zeros_like(rhs)
        x = self._lu_solve(rhs)
        target = rtol * np.linalg.norm(rhs, axis=0)
        for _ in range(3):
            r = rhs - self.A @ x
            res = np.linalg.norm(r, axis=0)
            if np.all(res <= target):
                break
            x += self._lu_solve(r)
        else:
            r = rhs - self.A @ x
            res = np.linalg.norm(r, axis=0)
            bad = res > target
            if bad.any():
                rel = np.max(res[bad] / np.maximum(target[bad] / rtol, np.finfo(float).tiny))
                warnings.warn(f"projection solve reached relative residual {rel:.3e}", RuntimeWarning, stacklevel=4)
        return x


class _Projector:
    """Reduced normal equations for the gradient and curl projections.

    One node per connected component is grounded and only an independent set
    of triangles is kept, so both systems are positive definite.
    """

    def __init__(self, bundle: LaplacianBundle, mode: str):
        B1, B2 = bundle.ops.B1, bundle.ops.B2
        e = bundle.e
        if mode == "unnormalized":
            w_grad, w_curl = np.ones(e), np.ones(e)
        else:
            w_grad, w_curl = bundle.d2, 1.0 / bundle.d2
        n = B1.shape[0]
        _, comp = connected_components(abs(B1) @ abs(B1).T, directed=False)
        roots = np.unique(comp, return_index=True)[1]
        grounded = np.setdiff1d(np.arange(n), roots)
        self.B1 = sp.csr_matrix(B1)[grounded]
        self.grad = _SPDSolver(self.B1 @ sp.diags(w_grad) @ self.B1.T)
        self.B2 = sp.csc_matrix(B2)[:, independent_columns(B2)]
        self.curl = _SPDSolver(self.B2.T @ sp.diags(w_curl) @ self.B2)
        self.mode = mode


_CACHE_LOCK = threading.Lock()


def _projector(bundle: LaplacianBundle, mode: str) -> _Projector:
    # cached on the (immutable) bundle
    with _CACHE_LOCK:
        cache = bundle.__dict__.setdefault("_projectors", {})
        if mode not in cache:
            cache[mode] = _Projector(bundle, mode)
        return cache[mode]


def _project(X: np.ndarray, bundle: LaplacianBundle, mode: str, rtol: float):
    P = _projector(bundle, mode)
    d2 = bundle.d2[:, None]
    if mode == "unnormalized":
        rhs_g, rhs_c = X, X
    elif mode == "weighted":
        rhs_g, rhs_c = X, X / d2
    else:
        rhs_g, rhs_c = np.sqrt(d2) * X, X / np.sqrt(d2)

    G = np.asarray(P.B1.T @ P.grad.solve(np.asarray(P.B1 @ rhs_g), rtol))
    if mode == "weighted":
        G = d2 * G
    elif mode == "symmetric":
        G = np.sqrt(d2) * G

    if P.B2.shape[1]:
        C = np.asarray(P.B2 @ P.curl.solve(np.asarray(P.B2.T @ rhs_c), rtol))
        if mode == "symmetric":
            C = C / np.sqrt(d2)
    else:
        C = np.zeros_like(X)
    return G, C, X - G - C


def decompose_many(X: np.ndarray, bundle: LaplacianBundle, mode: str = "unnormalized", rtol: float = 1e-12):
    """Decompose each column of ``X``; returns ``(gradient, curl, harmonic)`` blocks."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != bundle.e:
        raise ValueError(f"expected an array with {bundle.e} rows, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("flow contains non-finite entries")
    return _project(X, bundle, mode, rtol)


def decompose(flow, bundle: LaplacianBundle, mode: str = "unnormalized", rtol: float = 1e-12) -> HodgeComponents:
    """Split an edge flow into gradient, curl and harmonic components.

    Projections solve reduced normal equations by sparse factorization with
    iterative refinement to relative residual ``rtol``; the harmonic part is
    the remainder, so the three components sum to ``flow`` up to rounding.
    """
    x = np.asarray(flow, dtype=float)
    if x.shape != (bundle.e,):
        raise ValueError(f"flow must have length {bundle.e}, got shape {x.shape}")
    G, C, H = decompose_many(x[:, None], bundle, mode, rtol)
    return HodgeComponents(G[:, 0], C[:, 0], H[:, 0], mode)


def _rank_mod_p(M: sp.spmatrix, p: int = 2_147_483_647) -> int:
    """Rank over GF(p) by sparse column elimination; entries must be integers."""
    M = sp.csc_matrix(M)
    pivots: dict[int, dict[int, int]] = {}
    for j in range(M.shape[1]):
        lo, hi = M.indptr[j], M.indptr[j + 1]
        v = {int(r): int(x) % p for r, x in zip(M.indices[lo:hi], M.data[lo:hi]) if int(x) % p}
        while v:
            piv = max(v)
            row = pivots.get(piv)
            if row is None:
                inv = pow(v[piv], p - 2, p)
                pivots[piv] = {r: (x * inv) % p for r, x in v.items()}
                break
            f = v[piv]
            for r, x in row.items():
                y = (v.get(r, 0) - f * x) % p
                if y:
                    v[r] = y
                else:
                    v.pop(r, None)
    return len(pivots)


def _components(B1: sp.spmatrix) -> int:
    A = abs(B1) @ abs(B1).T
    return connected_components(A, directed=False)[0]


def harmonic_dimension(bundle: LaplacianBundle, method: str = "auto", dense_cap: int = 2000, tol: float = 1e-8) -> int:
    """Dimension of ker(L1), the number of unfilled one-dimensional holes.

    ``method="eig"`` counts eigenvalues of the dense ``L1`` below ``tol`` and
    is limited to ``e <= dense_cap``; ``method="rank"`` uses
    ``e - rank(B1) - rank(B2)`` with exact sparse ranks; ``"auto"`` picks by
    size.
    """
    e = bundle.e
    if method == "auto":
        method = "eig" if e <= dense_cap else "rank"
    if method == "eig":
        if e > dense_cap:
            raise ValueError(f"dense eigensolver capped at {dense_cap} edges (got {e}); use method='rank'")
        ev = np.linalg.eigvalsh(bundle.L1.toarray())
        return int(np.sum(ev < tol))
    if method == "rank":
        B1, B2 = bundle.ops.B1, bundle.ops.B2
        rank_b1 = B1.shape[0] - _components(B1)
        rank_b2 = _rank_mod_p(B2) if B2.shape[1] else 0
        return int(e - rank_b1 - rank_b2)
    raise ValueError(f"unknown method {method!r}")
