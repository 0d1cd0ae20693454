"""Connections on a frame: covariant derivative, torsion, curvature.

Layout conventions:

* ``Gamma[i, j, k] = Gamma^i_{jk} = theta^i(nabla_{e_k} e_j)`` -- the LAST
  lower slot is the differentiation direction;
* the covariant derivative appends its new lower slot LAST;
* ``torsion[i, j, k] = Gamma^i_{kj} - Gamma^i_{jk} - c^i_{jk}``;
* ``curvature[c, d, a, b]`` is the coefficient of
  ``R(e_a, e_b) e_d = R^c_{dab} e_c``.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from . import backend as bk
from .errors import ValidationError
from .frames import FieldLike, Frame


def covariant_derivative(
    frame: Frame,
    Gamma: FieldLike,
    T: FieldLike,
    n_up: int,
    n_low: int,
) -> np.ndarray:
    """nabla T with the direction appended as the last axis.

    ``T`` has its ``n_up`` contravariant slots first, then ``n_low``
    covariant slots.
    """
    G = frame.value(Gamma)
    Tv = frame.value(T)
    if Tv.ndim != n_up + n_low:
        raise ValidationError("slot count mismatch", ndim=Tv.ndim, expected=n_up + n_low)
    out = frame.deriv(T)
    for slot in range(n_up):
        # + Gamma^b_{da} T^{..d..}
        term = np.tensordot(G, Tv, axes=([1], [slot]))  # [b, a, ...rest]
        term = np.moveaxis(term, 0, 0)  # b at 0
        # slots now: (b, a, T-rest); move b to `slot`, a to end
        term = np.moveaxis(term, 1, -1)
        term = np.moveaxis(term, 0, slot)
        out = out + term
    for slot in range(n_up, n_up + n_low):
        # - Gamma^d_{ca} T_{..c..} : contract T's covariant slot with Gamma's upper
        term = np.tensordot(Tv, G, axes=([slot], [0]))  # [...rest, c, a]
        term = np.moveaxis(term, -2, slot)
        out = out - term
    return out


def torsion(frame: Frame, Gamma: FieldLike) -> np.ndarray:
    G = frame.value(Gamma)
    c = frame.structure_constants()
    return np.einsum("ikj->ijk", G) - G - c


def curvature(frame: Frame, Gamma: FieldLike) -> np.ndarray:
    """R[c, d, a, b] = e_a(G^c_{db}) - e_b(G^c_{da})
    + G^c_{ea} G^e_{db} - G^c_{eb} G^e_{da} - c^e_{ab} G^c_{de}."""
    G = frame.value(Gamma)
    dG = frame.deriv(Gamma)  # dG[c, d, b, a] = e_a(Gamma^c_{db})
    c = frame.structure_constants()
    t1 = np.einsum("cdba->cdab", dG)
    t2 = np.einsum("cdab->cdba", t1)  # e_b(Gamma^c_{da})
    q1 = np.einsum("cea,edb->cdab", G, G)
    q2 = np.einsum("ceb,eda->cdab", G, G)
    br = np.einsum("eab,cde->cdab", c, G)
    return t1 - t2 + q1 - q2 - br


def ricci(R: np.ndarray) -> np.ndarray:
    """Ric_{ab} = R^c_{bca} (contraction of the value slot with the first
    curvature direction)."""
    return np.einsum("cbca->ba", R)


def curvature_trace(R: np.ndarray) -> np.ndarray:
    """W_{ab} = R^c_{cab}: trace of the endomorphism slot; measures the
    curvature of the induced connection on the top exterior power."""
    return np.einsum("ccab->ab", R)


def metric_derivative(frame: Frame, Gamma: FieldLike, g: FieldLike) -> np.ndarray:
    """nabla_a g_{bc} with layout [b, c, a]."""
    return covariant_derivative(frame, Gamma, g, 0, 2)


def levi_civita_connection(frame: Frame, g: FieldLike) -> np.ndarray:
    """Torsion-free metric connection.

    Homogeneous frame (frame-constant metric): Koszul formula
    ``2 g(nabla_j e_k, e_l) = g([e_j,e_k],e_l) - g([e_k,e_l],e_j)
    + g([e_l,e_j],e_k)``.
    Chart frame: Christoffel symbols from coordinate derivatives of g.
    """
    from . import linalg

    gv = frame.value(g)
    ginv = linalg.inv(gv)
    c = frame.structure_constants()
    dg = frame.deriv(g)  # dg[b, c, a] = e_a(g_{bc})
    if bk.max_abs(dg) == 0.0:
        gbr = np.einsum("ijk,il->jkl", c, gv)  # g([e_j, e_k], e_l)
        rhs = gbr - np.einsum("klj->jkl", gbr) + np.einsum("ljk->jkl", gbr)
        half = bk.rational(1, 2) if bk.is_exact_array(gv) else 0.5
        # rhs[j,k,l] = 2 g(nabla_{e_j} e_k, e_l); Gamma^b_{kj} (direction j)
        return half * np.einsum("jkl,lb->bkj", rhs, ginv)
    # coordinate frame: Gamma^i_{jk} = 1/2 g^{il} (e_j g_{lk} + e_k g_{lj} - e_l g_{jk})
    t1 = np.einsum("lkj->ljk", dg)   # e_j g_{lk} indexed [l, j, k]
    t2 = np.einsum("ljk->ljk", dg)   # e_k g_{lj} indexed [l, j, k]
    t3 = np.einsum("jkl->ljk", dg)   # e_l g_{jk} indexed [l, j, k]
    return 0.5 * np.einsum("il,ljk->ijk", ginv, t1 + t2 - t3)


def connection_plus_difference(frame: Frame, Gamma: FieldLike, D: np.ndarray) -> np.ndarray:
    """Gamma' = Gamma + D for a difference tensor D[i, j, k] (same layout)."""
    return frame.value(Gamma) + D


def torsion_free_part(frame: Frame, Gamma: FieldLike) -> np.ndarray:
    """nabla - (1/2) Tor(nabla): the torsion-free reduction with the same
    geodesics.  Difference layout: Delta Gamma[i, j, k] = -1/2 T^i_{kj}."""
    G = frame.value(Gamma)
    T = torsion(frame, Gamma)
    half = bk.rational(1, 2) if bk.is_exact_array(G) else 0.5
    return G - half * np.einsum("ikj->ijk", T)


def add_bilinear_term(frame: Frame, Gamma: FieldLike, H: np.ndarray, direction_first: bool) -> np.ndarray:
    """Gamma' for nabla'_X Y = nabla_X Y + H(X, Y) (direction_first=True)
    or + H(Y, X) (False), with H[i, first_arg, second_arg]."""
    G = frame.value(Gamma)
    if direction_first:
        # H(X, Y): X = direction a, Y = acted j -> Delta[i, j, a] = H[i, a, j]
        return G + np.einsum("iaj->ija", H)
    return G + H
