"""Conjugate gradient for symmetric positive (semi)definite systems.

Handles a block of right-hand sides at once; each column runs its own
recurrence and stops independently. Consistent singular systems (right-hand
side orthogonal to the kernel) converge to a solution with no kernel drift
beyond rounding when started from zero.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np


class SolverError(RuntimeError):
    """Raised when an iterative solve misses its tolerance."""


class CGResult(NamedTuple):
    x: np.ndarray
    iterations: int
    residual: np.ndarray  # true residual norm per column
    converged: bool


def cg(A, B, x0=None, *, rtol: float = 1e-12, atol: float = 0.0, maxiter: int | None = None) -> CGResult:
    """Solve ``A X = B`` column by column.

    ``A`` is anything supporting ``A @ M`` for a dense ``(n, k)`` block.
    Convergence per column is ``||b - A x|| <= max(rtol ||b||, atol)``,
    checked on the true residual before returning.
    """
    B = np.asarray(B, dtype=float)
    vector = B.ndim == 1
    if vector:
        B = B[:, None]
    n, k = B.shape
    maxiter = 10 * max(n, 1) if maxiter is None else maxiter

    X = np.zeros((n, k)) if x0 is None else np.array(x0, dtype=float).reshape(n, k)
    thresh = np.maximum(rtol * np.linalg.norm(B, axis=0), atol)

    it = 0
    R = B - A @ X if n else B.copy()
    res = np.linalg.norm(R, axis=0)
    # restart from the true residual when the recursive one has drifted
    while it < maxiter:
        active = res > thresh
        if not active.any():
            break
        P = R.copy()
        rr = np.einsum("ij,ij->j", R, R)
        while active.any() and it < maxiter:
            idx = np.flatnonzero(active)
            Pa = P[:, idx]
            APa = A @ Pa
            pAp = np.einsum("ij,ij->j", Pa, APa)
            ok = pAp > 0
            if not ok.all():
                active[idx[~ok]] = False
                idx, Pa, APa, pAp = idx[ok], Pa[:, ok], APa[:, ok], pAp[ok]
                if not len(idx):
                    break
            alpha = rr[idx] / pAp
            X[:, idx] += alpha * Pa
            R[:, idx] -= alpha * APa
            rr_new = np.einsum("ij,ij->j", R[:, idx], R[:, idx])
            P[:, idx] = R[:, idx] + (rr_new / rr[idx]) * Pa
            rr[idx] = rr_new
            active[idx] = np.sqrt(rr_new) > thresh[idx]
            it += 1
        R = B - A @ X
        res_new = np.linalg.norm(R, axis=0)
        failing = res_new > thresh
        stalled = failing.any() and np.all(res_new[failing] >= res[failing])
        res = res_new
        if stalled:
            break

    converged = bool(np.all(res <= thresh))
    if vector:
        X = X[:, 0]
    return CGResult(X, it, res, converged)
