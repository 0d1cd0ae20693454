"""Frames: the local presentation all computations run against.

A frame supplies three things: the dimension, the structure constants
``c[i,j,k]`` of the frame bracket ``[e_j, e_k] = c^i_{jk} e_i``, and
directional derivatives of tensor fields along the frame vectors.

Two presentations are supported:

* ``HomogeneousFrame`` -- constant structure constants, all tensor fields
  frame-constant (their frame derivatives vanish).  Works on the exact and
  the float backend.
* ``ChartFrame`` -- a coordinate frame (vanishing brackets) around a
  basepoint; tensor fields may be callables of the coordinates and are
  differentiated by central finite differences.  Float backend only.

Exterior derivative of a k-form field:

``(d a)(X_0..X_k) = sum_p (-1)^p X_p(a(..no X_p..))
                  + sum_{p<q} (-1)^{p+q} a([X_p, X_q], ..no X_p, X_q..)``
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional, Union

import numpy as np

from . import backend as bk
from . import tensor as tn
from .errors import ValidationError

FieldLike = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]


class Frame:
    """Abstract frame interface."""

    n: int
    backend: str

    def structure_constants(self) -> np.ndarray:
        raise NotImplementedError

    def value(self, field: FieldLike) -> np.ndarray:
        raise NotImplementedError

    def deriv(self, field: FieldLike) -> np.ndarray:
        """e_a(T) with the direction appended as the last axis."""
        raise NotImplementedError

    def at(self, x) -> "Frame":
        return self


class HomogeneousFrame(Frame):
    """Frame with constant structure constants and frame-constant fields."""

    def __init__(self, c: np.ndarray, backend: Optional[str] = None):
        c = np.asarray(c)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise ValidationError("structure constants must have shape (n, n, n)")
        self.n = c.shape[0]
        self.backend = backend or bk.backend_of(c)
        c = bk.coerce_like(c, self.backend)
        if not bk.is_zero(c + np.swapaxes(c, 1, 2), tol=0.0 if self.backend == bk.EXACT else 1e-12):
            raise ValidationError("structure constants must be antisymmetric in the lower pair")
        self._c = c

    def structure_constants(self) -> np.ndarray:
        return self._c

    def value(self, field: FieldLike) -> np.ndarray:
        if callable(field):
            raise ValidationError("homogeneous frames carry frame-constant fields only")
        return field

    def deriv(self, field: FieldLike) -> np.ndarray:
        v = self.value(field)
        return bk.zeros(v.shape + (self.n,), bk.backend_of(v))

    def jacobi_residual(self) -> np.ndarray:
        """Jacobi identity residual of the bracket (zero for a Lie algebra)."""
        c = self._c
        term = np.einsum("mjk,iml->ijkl", c, c)
        cyc = term + np.einsum("ijkl->iklj", term) + np.einsum("ijkl->iljk", term)
        return cyc


class ChartFrame(Frame):
    """Coordinate frame around a basepoint; fields may depend on position."""

    def __init__(self, n: int, basepoint=None, h: float = 1e-5):
        self.n = n
        self.backend = bk.FLOAT
        self.x0 = np.zeros(n) if basepoint is None else np.asarray(basepoint, dtype=float)
        self.h = float(h)

    def structure_constants(self) -> np.ndarray:
        return np.zeros((self.n, self.n, self.n))

    def value(self, field: FieldLike) -> np.ndarray:
        if callable(field):
            return np.asarray(field(self.x0), dtype=float)
        return np.asarray(field, dtype=float)

    def deriv(self, field: FieldLike) -> np.ndarray:
        v0 = self.value(field)
        out = np.zeros(v0.shape + (self.n,))
        if not callable(field):
            return out
        for a in range(self.n):
            xp = self.x0.copy(); xp[a] += self.h
            xm = self.x0.copy(); xm[a] -= self.h
            out[..., a] = (np.asarray(field(xp), float) - np.asarray(field(xm), float)) / (2 * self.h)
        return out

    def at(self, x) -> "ChartFrame":
        return ChartFrame(self.n, basepoint=x, h=self.h)


def exterior_derivative(frame: Frame, alpha: FieldLike) -> np.ndarray:
    """Exterior derivative of an antisymmetric k-form field, at the basepoint."""
    a = frame.value(alpha)
    k = a.ndim
    n = frame.n
    da = frame.deriv(alpha)
    c = frame.structure_constants()
    backend = bk.backend_of(a)
    out = bk.zeros((n,) * (k + 1), backend)
    # derivative terms
    for p in range(k + 1):
        term = np.moveaxis(da, -1, p)
        out = out + term if p % 2 == 0 else out - term
    # bracket terms
    letters = "abcdefgh"[: k + 1]
    for p in range(k + 1):
        for q in range(p + 1, k + 1):
            rest = "".join(l for i, l in enumerate(letters) if i not in (p, q))
            spec = f"m{letters[p]}{letters[q]},m{rest}->{letters}"
            term = np.einsum(spec, c, a)
            out = out + term if (p + q) % 2 == 0 else out - term
    return out


@dataclass
class Structure:
    """A frame presentation with its tensor data.

    ``J`` is the almost complex structure (1,1); ``g`` an optional compatible
    metric (0,2); ``Gamma`` an optional base connection with layout
    ``Gamma[i, j, k] = Gamma^i_{jk}`` where k is the differentiation
    direction.
    """

    frame: Frame
    J: FieldLike
    g: Optional[FieldLike] = None
    Gamma: Optional[FieldLike] = None
    name: str = ""

    @property
    def n(self) -> int:
        return self.frame.n

    @property
    def backend(self) -> str:
        return self.frame.backend

    def at(self, x) -> "Structure":
        return replace(self, frame=self.frame.at(x))

    def validate(self, tol: float = 1e-9) -> None:
        n = self.n
        if n % 2 != 0:
            raise ValidationError("almost complex structure requires even dimension", dim=n)
        J = self.frame.value(self.J)
        if J.shape != (n, n):
            raise ValidationError("J must be (n, n)", shape=J.shape)
        ident = bk.eye(n, bk.backend_of(J))
        resid = np.asarray(J) @ np.asarray(J) + ident
        if not bk.is_zero(resid, tol=0.0 if self.backend == bk.EXACT else tol):
            raise ValidationError("J^2 != -identity", residual=bk.max_abs(resid))
        if self.g is not None:
            g = self.frame.value(self.g)
            if not bk.is_zero(g - g.T, tol=0.0 if self.backend == bk.EXACT else tol):
                raise ValidationError("metric must be symmetric")
            omega = np.asarray(g) @ np.asarray(J)
            if not bk.is_zero(omega + omega.T, tol=0.0 if self.backend == bk.EXACT else tol):
                raise ValidationError(
                    "metric is not compatible with J (g(JX, JY) != g(X, Y))",
                    residual=bk.max_abs(omega + omega.T),
                )
