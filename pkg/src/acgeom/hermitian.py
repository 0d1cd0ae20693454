"""Almost Hermitian structures: fundamental 2-form, classification of the
special metric types, and the canonical metric almost-complex connection.

All constructions run off the Levi-Civita connection's G tensor.  With the
lowered tensor ``G(X, Y, Z) := g(X, G(Y, Z))`` the classes are detected by:

* Kaehler:           G = 0
* Hermitian:         G_minus = 0
* nearly Kaehler:    G(X, Y) + G(Y, X) = 0
* almost Kaehler:    Alt[g(X, J G(Y, Z))] = 0   (equivalently d omega = 0)
* semi-Kaehler:      nabla_a J^a_b = 0          (equivalently delta omega = 0)

The unique metric almost-complex connection is the G-modification of the
Levi-Civita connection; its difference from Levi-Civita is determined by
its torsion T through the contorsion formula

    ``K_{abc} = 1/2 (T_{cab} - T_{abc} - T_{bca})``

(fully lowered, slots value/first-argument/direction, torsion lowered on
its value slot), and it is singled out among metric connections by the
vanishing of the complex-linear part of ``K(., X)`` over the first
argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import almost_complex as ac
from . import backend as bk
from . import connection as cn
from . import linalg
from . import tensor as tn
from .errors import ValidationError
from .frames import FieldLike, Frame, Structure, exterior_derivative


def fundamental_form(g: np.ndarray, J: np.ndarray) -> np.ndarray:
    """omega_{ab} = g(e_a, J e_b) = g_{ac} J^c_b."""
    omega = np.einsum("ac,cb->ab", g, J)
    return omega


def hermitize(g: np.ndarray, J: np.ndarray) -> np.ndarray:
    """J-invariant part of a symmetric bilinear form:
    (1/2)(g(X, Y) + g(JX, JY))."""
    return bk.rational(1, 2) * (g + np.einsum("xy,xa,yb->ab", g, J, J)) if bk.is_exact_array(g) else 0.5 * (
        g + np.einsum("xy,xa,yb->ab", g, J, J)
    )


def lowered(g: np.ndarray, G: np.ndarray) -> np.ndarray:
    """g(X, G(Y, Z)) with slots [x, y, z]."""
    return np.einsum("xb,byz->xyz", g, G)


def nabla_omega_residual(frame: Frame, Gamma: FieldLike, g: FieldLike, J: FieldLike) -> np.ndarray:
    """Residual of nabla_X omega(Y, Z) = 2 g(Y, J G(Z, X)) for metric
    connections (layout [Y, Z, X])."""
    gv = frame.value(g)
    Jv = frame.value(J)
    if callable(g) or callable(J):
        omega: FieldLike = lambda x: fundamental_form(
            frame.at(x).value(g), frame.at(x).value(J))
    else:
        omega = fundamental_form(gv, Jv)
    cov_omega = cn.covariant_derivative(frame, Gamma, omega, 0, 2)
    G = ac.g_tensor(frame, Gamma, J)
    two = bk.rational(2) if bk.is_exact_array(G) else 2.0
    rhs = two * np.einsum("bd,de,eca->bca", gv, Jv, G)
    return cov_omega - rhs


@dataclass
class MetricClassification:
    """Residuals (max-abs) of the defining identity of each metric type;
    a structure is of the given type when the residual vanishes (exactly on
    the exact backend, below tolerance on float)."""

    kaehler: float
    hermitian: float
    nearly_kaehler: float
    almost_kaehler: float
    semi_kaehler: float

    def flags(self, tol: float) -> dict:
        return {
            name: getattr(self, name) <= tol
            for name in ("kaehler", "hermitian", "nearly_kaehler", "almost_kaehler", "semi_kaehler")
        }


def classify_metric(struct: Structure) -> MetricClassification:
    """Classify an almost Hermitian structure from its Levi-Civita G."""
    if struct.g is None:
        raise ValidationError("metric classification requires a metric")
    frame = struct.frame
    gv = frame.value(struct.g)
    Jv = frame.value(struct.J)
    lc = cn.levi_civita_connection(frame, struct.g)
    G = ac.g_tensor(frame, lc, struct.J)
    Gp, Gm = ac.hermitian_split(G, Jv)
    covJ = ac.cov_J(frame, lc, struct.J)
    ak_tensor = tn.alt(np.einsum("xb,be,eyz->xyz", gv, Jv, G))
    return MetricClassification(
        kaehler=bk.max_abs(G),
        hermitian=bk.max_abs(Gm),
        nearly_kaehler=bk.max_abs(ac.arg_sym(G)),
        almost_kaehler=bk.max_abs(ak_tensor),
        semi_kaehler=bk.max_abs(ac.div_J(covJ)),
    )


def torsion_lowered(g: np.ndarray, T: np.ndarray) -> np.ndarray:
    """T_{abc}: torsion with the value slot lowered and moved first is NOT
    done here -- the value slot stays first: Tlow[p, q, r] = g_{px} T^x_{qr}."""
    return np.einsum("px,xqr->pqr", g, T)


def contorsion(g: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Difference tensor K (raised value slot, layout [value, first-arg,
    direction]) of the unique metric connection with torsion T from the
    Levi-Civita connection: nabla^T_X Y = nabla^LC_X Y + K(Y, X)."""
    Tl = torsion_lowered(g, T)
    half = bk.rational(1, 2) if bk.is_exact_array(T) else 0.5
    Kl = half * (
        np.einsum("cab->abc", Tl) - Tl - np.einsum("bca->abc", Tl)
    )
    ginv = linalg.inv(g)
    return np.einsum("ax,xbc->abc", ginv, Kl)


def metric_connection_with_torsion(frame: Frame, g: FieldLike, T: np.ndarray) -> np.ndarray:
    """The unique metric connection with the prescribed torsion."""
    gv = frame.value(g)
    lc = cn.levi_civita_connection(frame, g)
    K = contorsion(gv, T)
    return cn.add_bilinear_term(frame, lc, K, direction_first=False)


def torsion_condition_residual(g: np.ndarray, J: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Residual of the algebraic torsion condition singling out the canonical
    metric almost-complex connection: K(X, Y) - J K(JX, Y) = 0, i.e. the
    complex-linear part over the first argument of the contorsion vanishes."""
    K = contorsion(g, T)
    two = bk.rational(2) if bk.is_exact_array(K) else 2.0
    return two * ac.complex_linear_part(K, J)


def canonical_metric_connection(struct: Structure) -> np.ndarray:
    """The unique metric connection preserving J (G-modification of the
    Levi-Civita connection)."""
    lc = cn.levi_civita_connection(struct.frame, struct.g)
    return ac.g_connection(struct.frame, lc, struct.J)


def d_omega(struct: Structure) -> np.ndarray:
    """Exterior derivative of the fundamental 2-form."""
    gv = struct.frame.value(struct.g)
    Jv = struct.frame.value(struct.J)
    if callable(struct.g) or callable(struct.J):
        field = lambda x: fundamental_form(
            struct.frame.at(x).value(struct.g), struct.frame.at(x).value(struct.J)
        )
        return exterior_derivative(struct.frame, field)
    return exterior_derivative(struct.frame, fundamental_form(gv, Jv))
