"""Dense linear algebra that works on both scalar backends.

Float arrays dispatch to ``numpy.linalg``; exact object arrays use
fraction-exact Gaussian elimination (first-nonzero pivoting -- no rounding,
so magnitude pivoting is unnecessary).
"""

from __future__ import annotations

import numpy as np

from . import backend as bk
from .errors import SingularError


def _as2d(a):
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    return a


def solve(A: np.ndarray, b: np.ndarray, allow_underdetermined: bool = False) -> np.ndarray:
    """Solve A x = b.  A may be rectangular; raises SingularError when the
    system is inconsistent, or underdetermined unless
    ``allow_underdetermined`` (then one particular solution is returned)."""
    A = _as2d(A)
    if not bk.is_exact_array(A) and not bk.is_exact_array(np.asarray(b)):
        sol, res, rank, _ = np.linalg.lstsq(np.asarray(A, float), np.asarray(b, float), rcond=None)
        if rank < A.shape[1] and not allow_underdetermined:
            raise SingularError("linear system is underdetermined")
        check = A @ sol - b
        if np.max(np.abs(np.atleast_1d(check))) > 1e-8 * max(1.0, np.max(np.abs(b))):
            raise SingularError("linear system is inconsistent")
        return sol
    return _exact_solve(bk.as_exact(A), bk.as_exact(np.asarray(b, dtype=object)),
                        allow_underdetermined=allow_underdetermined)


def _exact_rref(M: np.ndarray):
    """Row-reduce in place (exact); returns (matrix, pivot column list)."""
    M = M.copy()
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for rr in range(r, rows):
            if M[rr, c] != 0:
                pr = rr
                break
        if pr is None:
            continue
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        piv = M[r, c]
        M[r, :] = [x / piv for x in M[r, :]]
        for rr in range(rows):
            if rr != r and M[rr, c] != 0:
                f = M[rr, c]
                M[rr, :] = [x - f * y for x, y in zip(M[rr, :], M[r, :])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def _exact_solve(A: np.ndarray, b: np.ndarray, allow_underdetermined: bool = False) -> np.ndarray:
    one_d = b.ndim == 1
    B = b.reshape(-1, 1) if one_d else b
    rows, cols = A.shape
    aug = np.empty((rows, cols + B.shape[1]), dtype=object)
    aug[:, :cols] = A
    aug[:, cols:] = B
    R, pivots = _exact_rref(aug)
    # inconsistency: a pivot in the augmented block
    for rr in range(rows):
        if all(R[rr, c] == 0 for c in range(cols)) and any(R[rr, c] != 0 for c in range(cols, R.shape[1])):
            raise SingularError("linear system is inconsistent")
    if len([p for p in pivots if p < cols]) < cols and not allow_underdetermined:
        raise SingularError("linear system is underdetermined")
    x = bk.zeros((cols, B.shape[1]), bk.EXACT)
    for i, c in enumerate([p for p in pivots if p < cols]):
        x[c, :] = R[i, cols:]
    return x[:, 0] if one_d else x


def nullspace(A: np.ndarray) -> np.ndarray:
    """Basis (columns) of the kernel of A."""
    A = _as2d(A)
    if not bk.is_exact_array(A):
        _, s, vt = np.linalg.svd(np.asarray(A, float))
        tol = max(A.shape) * (s[0] if s.size else 0.0) * 1e-12
        null_mask = np.ones(A.shape[1], dtype=bool)
        null_mask[: s.size] = s <= tol
        # columns of V spanning small singular directions
        k = int(np.sum(s <= tol)) + (A.shape[1] - s.size)
        if k == 0:
            return np.zeros((A.shape[1], 0))
        return vt[-k:, :].T
    R, pivots = _exact_rref(bk.as_exact(A))
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = bk.zeros((cols, len(free)), bk.EXACT)
    for j, fc in enumerate(free):
        basis[fc, j] = bk.rational(1)
        for i, pc in enumerate(pivots):
            basis[pc, j] = -R[i, fc]
    return basis


def rank(A: np.ndarray) -> int:
    A = _as2d(A)
    if not bk.is_exact_array(A):
        return int(np.linalg.matrix_rank(np.asarray(A, float), tol=1e-9))
    _, pivots = _exact_rref(bk.as_exact(A))
    return len(pivots)


def inv(A: np.ndarray) -> np.ndarray:
    A = _as2d(A)
    n, m = A.shape
    if n != m:
        raise ValueError("matrix must be square")
    if not bk.is_exact_array(A):
        try:
            return np.linalg.inv(np.asarray(A, float))
        except np.linalg.LinAlgError as e:
            raise SingularError(str(e)) from e
    return _exact_solve(bk.as_exact(A), bk.eye(n, bk.EXACT))


def det(A: np.ndarray):
    A = _as2d(A)
    n, m = A.shape
    if n != m:
        raise ValueError("matrix must be square")
    if not bk.is_exact_array(A):
        return float(np.linalg.det(np.asarray(A, float)))
    M = bk.as_exact(A).copy()
    d = bk.rational(1)
    for c in range(n):
        pr = None
        for rr in range(c, n):
            if M[rr, c] != 0:
                pr = rr
                break
        if pr is None:
            return bk.rational(0)
        if pr != c:
            M[[c, pr]] = M[[pr, c]]
            d = -d
        d = d * M[c, c]
        piv = M[c, c]
        for rr in range(c + 1, n):
            if M[rr, c] != 0:
                f = M[rr, c] / piv
                M[rr, c:] = [x - f * y for x, y in zip(M[rr, c:], M[c, c:])]
    return d
