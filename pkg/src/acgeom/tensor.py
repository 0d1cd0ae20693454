"""Pointwise multilinear algebra on dense arrays.

Conventions used throughout the engine:

* tensors are dense, row-major, zero-based, upper slots before lower slots;
* ``alt`` is the idempotent antisymmetrization projector (weight 1/k!);
* the wedge uses the determinant (shuffle) convention with no 1/k! factor:
  ``(a ^ b)(X, Y) = a(X) b(Y) - a(Y) b(X)`` for 1-forms;
* the Hodge star on k-forms is
  ``(star a)_{j...} = (1/k!) * or * sqrt(det g) * a^{i...} eps_{i... j...}``
  where ``or`` is +1 for the frame orientation and -1 for the opposite one.
"""

from __future__ import annotations

import math
from itertools import permutations

import numpy as np

from . import backend as bk
from . import linalg
from .errors import DimensionError, ValidationError


def _perm_sign(p) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alt(T: np.ndarray, slots=None) -> np.ndarray:
    """Antisymmetrization projector over the given slots (default: all)."""
    k = T.ndim if slots is None else len(slots)
    slots = tuple(range(T.ndim)) if slots is None else tuple(slots)
    backend = bk.backend_of(T)
    out = bk.zeros(T.shape, backend)
    axes_all = list(range(T.ndim))
    for p in permutations(range(k)):
        axes = axes_all.copy()
        for pos, src in enumerate(p):
            axes[slots[pos]] = slots[src]
        term = np.transpose(T, axes)
        if _perm_sign(p) > 0:
            out = out + term
        else:
            out = out - term
    denom = math.factorial(k)
    if backend == bk.EXACT:
        return out * bk.rational(1, denom)
    return out / denom


def sym2(T: np.ndarray, i: int, j: int) -> np.ndarray:
    """Symmetric part over slots i, j (weight 1/2)."""
    half = bk.rational(1, 2) if bk.is_exact_array(T) else 0.5
    return (T + np.swapaxes(T, i, j)) * half


def skew2(T: np.ndarray, i: int, j: int) -> np.ndarray:
    """Skew part over slots i, j (weight 1/2)."""
    half = bk.rational(1, 2) if bk.is_exact_array(T) else 0.5
    return (T - np.swapaxes(T, i, j)) * half


def wedge(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Wedge of antisymmetric forms in the shuffle convention:
    ``a ^ b = ((k+l)! / (k! l!)) Alt(a (x) b)``."""
    k, l = a.ndim, b.ndim
    prod = np.multiply.outer(a, b)
    res = alt(prod)
    coeff = math.factorial(k + l) // (math.factorial(k) * math.factorial(l))
    if bk.is_exact_array(prod):
        return res * bk.rational(coeff)
    return res * coeff


def is_antisymmetric(T: np.ndarray, tol: float = 0.0) -> bool:
    return bk.is_zero(T - alt(T), tol)


def levi_civita(n: int, backend: str) -> np.ndarray:
    eps = bk.zeros((n,) * n, backend)
    one = bk.rational(1) if backend == bk.EXACT else 1.0
    for p in permutations(range(n)):
        eps[p] = one * _perm_sign(p)
    return eps


def raise_all(alpha: np.ndarray, ginv: np.ndarray) -> np.ndarray:
    """Raise every slot of a fully covariant tensor with g^{-1}."""
    out = alpha
    for slot in range(alpha.ndim):
        out = np.tensordot(out, ginv, axes=([slot], [0]))
        # tensordot moves the contracted slot to the end; rotate it back
        out = np.moveaxis(out, -1, slot)
    return out


def volume_factor(g: np.ndarray):
    """sqrt(det g); exact backend requires det g to be a perfect square."""
    d = linalg.det(g)
    if bk.is_exact_array(g):
        return bk.sqrt_exact(d)
    if d <= 0:
        raise ValidationError("metric determinant must be positive", det=float(d))
    return math.sqrt(d)


def hodge_star(alpha: np.ndarray, g: np.ndarray, orientation: int = 1) -> np.ndarray:
    """Hodge star of an antisymmetric k-form (k = alpha.ndim) in dimension n.

    ``orientation`` is +1 for the frame orientation, -1 for the opposite.
    """
    n = g.shape[0]
    k = alpha.ndim
    if k > n:
        raise DimensionError("form degree exceeds dimension", degree=k, dim=n)
    backend = bk.backend_of(alpha)
    ginv = linalg.inv(g)
    up = raise_all(alpha, ginv)
    eps = levi_civita(n, backend)
    letters = "abcdefgh"
    src = letters[:k]
    dst = letters[k:n]
    spec = f"{src},{src}{dst}->{dst}" if k else f",{letters[:n]}->{letters[:n]}"
    if k == 0:
        contracted = eps * alpha
    else:
        contracted = np.einsum(spec, up, eps)
    denom = math.factorial(k)
    vol = volume_factor(g)
    if backend == bk.EXACT:
        coeff = bk.rational(orientation, denom) * vol
        return contracted * coeff
    return contracted * (orientation * vol / denom)


def codifferential_2form_dim4(F: np.ndarray, g: np.ndarray, d_of) -> np.ndarray:
    """delta F = -star d star F for a 2-form in dimension 4.

    ``d_of`` maps a (constant-coefficient) k-form array to its exterior
    derivative array; orientation independent since the star appears twice.
    """
    if F.ndim != 2 or g.shape[0] != 4:
        raise DimensionError("codifferential implemented for 2-forms in dimension 4")
    return -hodge_star(d_of(hodge_star(F, g)), g)


def trace(T: np.ndarray, up_slot: int, low_slot: int) -> np.ndarray:
    return np.trace(T, axis1=up_slot, axis2=low_slot)
