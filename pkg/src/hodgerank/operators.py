"""Boundary operators and 1-Hodge Laplacians."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TextIO

import numpy as np
import scipy.sparse as sp

from .complex import SimplicialComplex


@dataclass(frozen=True)
class BoundaryOperators:
    """Signed incidence matrices.

    ``B1`` (n x e) holds -1 at the smaller endpoint and +1 at the larger one.
    ``B2`` (e x t) holds +1 on ``[u,v]`` and ``[v,w]`` and -1 on ``[u,w]`` for
    the triangle ``[u,v,w]``.
    """

    B1: sp.csc_matrix
    B2: sp.csc_matrix

    @property
    def shape(self) -> tuple[int, int, int]:
        n, e = self.B1.shape
        return n, e, self.B2.shape[1]


def boundary_operators(c: SimplicialComplex) -> BoundaryOperators:
    n, e, t = c.n, c.e, c.t
    cols = np.repeat(np.arange(e), 2)
    rows = c.edges.ravel()
    data = np.tile([-1.0, 1.0], e)
    B1 = sp.csc_matrix((data, (rows, cols)), shape=(n, e))

    if t:
        tri = c.triangles
        faces = [
            [c.edge_index[(int(u), int(v))] for u, v, _ in tri],
            [c.edge_index[(int(u), int(w))] for u, _, w in tri],
            [c.edge_index[(int(v), int(w))] for _, v, w in tri],
        ]
        rows = np.column_stack(faces).ravel()
        cols = np.repeat(np.arange(t), 3)
        data = np.tile([1.0, -1.0, 1.0], t)
        B2 = sp.csc_matrix((data, (rows, cols)), shape=(e, t))
    else:
        B2 = sp.csc_matrix((e, 0))
    return BoundaryOperators(B1, B2)


@dataclass(frozen=True)
class LaplacianBundle:
    """Unnormalized, normalized, and symmetric normalized 1-Hodge Laplacians.

    ``d1``, ``d2``, ``d3`` are the diagonals of the normalization matrices
    ``D1`` (nodes), ``D2`` (edges) and ``D3`` (triangles).
    """

    ops: BoundaryOperators
    L1: sp.csr_matrix
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    L1_norm: sp.csr_matrix
    L1_sym: sp.csr_matrix

    @property
    def e(self) -> int:
        return self.L1.shape[0]

    @property
    def D1(self) -> sp.dia_matrix:
        return sp.diags(self.d1)

    @property
    def D2(self) -> sp.dia_matrix:
        return sp.diags(self.d2)

    @property
    def D3(self) -> sp.dia_matrix:
        return sp.diags(self.d3)


def hodge_laplacian(b: BoundaryOperators) -> LaplacianBundle:
    """Assemble ``L1``, the normalization diagonals, ``𝓛1`` and its symmetrization.

    ``D2 = max(diag(|B2| 1), I)`` elementwise, ``D1 = 2 diag(|B1| D2 1)``,
    ``D3 = I / 3`` and

        𝓛1  = D2 B1ᵀ D1⁻¹ B1 + B2 D3 B2ᵀ D2⁻¹
        𝓛1ˢ = D2^(-1/2) 𝓛1 D2^(1/2)
    """
    B1, B2 = b.B1, b.B2
    n, e = B1.shape
    t = B2.shape[1]
    if e == 0:
        raise ValueError("empty edge set")

    L1 = (B1.T @ B1 + B2 @ B2.T).tocsr()

    d2 = np.maximum(np.asarray(abs(B2).sum(axis=1)).ravel(), 1.0)
    d1 = 2.0 * (abs(B1) @ d2)
    d3 = np.full(t, 1.0 / 3.0)

    lower = sp.diags(d2) @ B1.T @ sp.diags(1.0 / d1) @ B1
    upper = B2 @ sp.diags(d3) @ B2.T @ sp.diags(1.0 / d2)
    L1_norm = (lower + upper).tocsr()

    s, si = np.sqrt(d2), 1.0 / np.sqrt(d2)
    # built from symmetric factors so the result is symmetric to rounding
    lower_s = sp.diags(s) @ B1.T @ sp.diags(1.0 / d1) @ B1 @ sp.diags(s)
    upper_s = sp.diags(si) @ B2 @ sp.diags(d3) @ B2.T @ sp.diags(si)
    L1_sym = (lower_s + upper_s).tocsr()
    return LaplacianBundle(b, L1, d1, d2, d3, L1_norm, L1_sym)


def node_laplacian(b: BoundaryOperators) -> sp.csr_matrix:
    """Graph Laplacian ``B1 B1ᵀ``."""
    return (b.B1 @ b.B1.T).tocsr()


def dump_coo(matrix, fh: TextIO) -> None:
    """Write ``row col value`` triples, one nonzero per line."""
    m = sp.coo_matrix(matrix)
    order = np.lexsort((m.col, m.row))
    fh.write(f"# shape {m.shape[0]} {m.shape[1]}\n")
    for r, c, v in zip(m.row[order], m.col[order], m.data[order]):
        fh.write(f"{r} {c} {v:.17g}\n")
