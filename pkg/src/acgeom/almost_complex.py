"""The difference calculus of an almost complex structure.

Central object: for a connection ``nabla`` and an almost complex structure
``J``, the bilinear bundle map

    ``G(X, Y) = (1/2) (nabla_Y J) J X = -(1/2) J (nabla_Y J) X``

stored as ``G[b, c, a]`` with value slot b, first argument c, second
argument (= differentiation direction) a.  Everything canonical about
almost complex connections is a universal expression in G:

* ``nabla^G_X Y = nabla_X Y + G(Y, X)`` preserves J;
* the Hermitian / anti-Hermitian parts ``G_pm = (1/2)(G(X,Y) +- G(JX,JY))``
  generate the one-parameter family ``nabla^t = nabla^G + t G_plus(X, Y)``
  of J-preserving connections;
* the torsion of the family (torsion-free base) is
  ``Tor^t = 2 (t - 1) G_plus^skew - 2 G_minus^skew``;
* the intrinsic torsion of J (vanishing iff J integrable) is
  ``N(X, Y) = G_minus(Y, X) - G_minus(X, Y)``, one quarter of the classical
  bracket expression ``[JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]``.

Universal identities (each one is enforced by the verification suite):

* ``G(JX, Y) = -J G(X, Y)``;
* ``2 J^a_b G^b_{cd} = nabla_d J^a_c``;
* first-slot traces ``G^b_{ba} = 0`` and ``(JG)^b_{ba} = 0``;
* ``G_pm(X, JY) = +- J G_pm(X, Y)`` and ``G_pm(JX, Y) = -J G_pm(X, Y)``;
  consequently a Hermitian part that is purely symmetric or purely skew in
  its two arguments vanishes identically (the symmetric and skew pieces of
  G_plus determine each other).
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from . import backend as bk
from . import connection as cn
from .errors import ValidationError
from .frames import FieldLike, Frame


def _half(arr):
    return bk.rational(1, 2) if bk.is_exact_array(arr) else 0.5


def cov_J(frame: Frame, Gamma: FieldLike, J: FieldLike) -> np.ndarray:
    """nabla J with layout [b, d, a] = nabla_a J^b_d."""
    return cn.covariant_derivative(frame, Gamma, J, 1, 1)


def g_tensor(frame: Frame, Gamma: FieldLike, J: FieldLike) -> np.ndarray:
    """G[b, c, a] = (1/2) (nabla_a J^b_d) J^d_c."""
    covJ = cov_J(frame, Gamma, J)
    Jv = frame.value(J)
    return _half(covJ) * np.einsum("bda,dc->bca", covJ, Jv)


def cov_J_from_g_tensor(G: np.ndarray, J: np.ndarray) -> np.ndarray:
    """Invert the definition: nabla_a J^b_d = -2 G[b, c, a] J^c_d."""
    two = bk.rational(2) if bk.is_exact_array(G) else 2.0
    return -two * np.einsum("bca,cd->bda", G, J)


def hermitian_split(G: np.ndarray, J: np.ndarray):
    """(G_plus, G_minus): Hermitian / anti-Hermitian parts over the two
    vector arguments, G_pm = (1/2)(G(X, Y) +- G(JX, JY))."""
    GJJ = np.einsum("bxy,xc,ya->bca", G, J, J)
    h = _half(G)
    return h * (G + GJJ), h * (G - GJJ)


def arg_sym(G: np.ndarray) -> np.ndarray:
    """Symmetric part over the two vector arguments."""
    return _half(G) * (G + np.einsum("bca->bac", G))


def arg_skew(G: np.ndarray) -> np.ndarray:
    """Skew part over the two vector arguments."""
    return _half(G) * (G - np.einsum("bca->bac", G))


def complex_linear_part(M: np.ndarray, J: np.ndarray) -> np.ndarray:
    """Projection of a bilinear map onto the part complex-linear over the
    first vector argument: (1/2)(M - J M(J., .))."""
    JMJ = np.einsum("be,eca,cx->bxa", J, M, J)
    return _half(M) * (M - JMJ)


def nijenhuis(G_minus: np.ndarray) -> np.ndarray:
    """Intrinsic torsion N[b, x, y] = G_minus(Y, X) - G_minus(X, Y)."""
    return np.einsum("byx->bxy", G_minus) - G_minus


def nijenhuis_classical(frame: Frame, J: FieldLike) -> np.ndarray:
    """Bracket expression N4(X, Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y],
    equal to four times the intrinsic torsion."""
    Jv = frame.value(J)
    c = frame.structure_constants()
    dJ = frame.deriv(J)  # dJ[b, d, a] = e_a(J^b_d)
    # frame-field brackets of Je_j = J^p_j e_p with position dependence:
    # [Je_j, Je_k] = J^p_j J^q_k [e_p, e_q] + J^p_j e_p(J^q_k) e_q - J^q_k e_q(J^p_j) e_p
    t_jj = (
        np.einsum("pj,qk,ipq->ijk", Jv, Jv, c)
        + np.einsum("pj,ikp->ijk", Jv, dJ)
        - np.einsum("qk,ijq->ijk", Jv, dJ)
    )
    # J[Je_j, e_k] = J ( J^p_j [e_p, e_k] - e_k(J^p_j) e_p )
    t_j1 = np.einsum("iq,pj,qpk->ijk", Jv, Jv, c) - np.einsum("ip,pjk->ijk", Jv, dJ)
    # J[e_j, Je_k] = J ( J^q_k [e_j, e_q] + e_j(J^q_k) e_q )
    t_j2 = np.einsum("iq,pk,qjp->ijk", Jv, Jv, c) + np.einsum("iq,qkj->ijk", Jv, dJ)
    t_br = c
    return t_jj - t_j1 - t_j2 - t_br


def g_connection(frame: Frame, Gamma: FieldLike, J: FieldLike) -> np.ndarray:
    """nabla^G = nabla + G(Y, X): the canonical J-preserving modification."""
    G = g_tensor(frame, Gamma, J)
    return cn.add_bilinear_term(frame, Gamma, G, direction_first=False)


def t_family(frame: Frame, Gamma: FieldLike, J: FieldLike, t) -> np.ndarray:
    """nabla^t = nabla^G + t G_plus(X, Y) (X the direction)."""
    G = g_tensor(frame, Gamma, J)
    Gp, _ = hermitian_split(G, frame.value(J))
    base = cn.add_bilinear_term(frame, Gamma, G, direction_first=False)
    tt = bk.parse_scalar(t) if bk.is_exact_array(G) else float(t)
    return cn.add_bilinear_term(frame, base, tt * Gp, direction_first=True)


def kn_connection(frame: Frame, Gamma: FieldLike, J: FieldLike) -> np.ndarray:
    """Canonical almost complex connection with torsion equal to the
    intrinsic torsion of J: pass to the torsion-free reduction of the base,
    then take the t = 1 member of the family."""
    Gamma0 = cn.torsion_free_part(frame, Gamma)
    return t_family(frame, Gamma0, J, 1)


def family_torsion_predicted(G: np.ndarray, J: np.ndarray, t) -> np.ndarray:
    """Torsion of nabla^t over a torsion-free base:
    2 (t - 1) G_plus^skew - 2 G_minus^skew, layout [i, j, k] with the first
    vector argument j."""
    Gp, Gm = hermitian_split(G, J)
    two = bk.rational(2) if bk.is_exact_array(G) else 2.0
    tt = bk.parse_scalar(t) if bk.is_exact_array(G) else float(t)
    return two * (tt - 1) * arg_skew(Gp) - two * arg_skew(Gm)


def first_slot_traces(G: np.ndarray, J: np.ndarray):
    """(trace G^b_{ba}, trace (JG)^b_{ba}) -- both vanish identically."""
    JG = np.einsum("bx,xca->bca", J, G)
    return np.einsum("bba->a", G), np.einsum("bba->a", JG)


def div_J(covJ: np.ndarray) -> np.ndarray:
    """(div J)_b = nabla_a J^a_b."""
    return np.einsum("aba->b", covJ)


def compatibility_traces(G: np.ndarray, J: np.ndarray, covJ: np.ndarray):
    """Four trace quantities, each vanishing iff nabla_a J^a_b = 0:

    t1_c = 2 G^b_{cb}            (= (nabla_b J^b_d) J^d_c)
    t2_c = 2 (JG)^b_{cb}
    t3_c = 2 G^b_{x d} J^d_b     (trace of 2 G(X, J.))
    t4_c = 2 (G(J., J.))^b_{cb}
    """
    two = bk.rational(2) if bk.is_exact_array(G) else 2.0
    JG = np.einsum("bx,xca->bca", J, G)
    GJJ = np.einsum("bxy,xc,ya->bca", G, J, J)
    t1 = two * np.einsum("bcb->c", G)
    t2 = two * np.einsum("bcb->c", JG)
    t3 = two * np.einsum("bxd,db->x", G, J)
    t4 = two * np.einsum("bcb->c", GJJ)
    return t1, t2, t3, t4


def jg_identity_residual(frame: Frame, Gamma: FieldLike, J: FieldLike) -> np.ndarray:
    """Residual of 2 J^a_b G^b_{cd} = nabla_d J^a_c (identically zero)."""
    G = g_tensor(frame, Gamma, J)
    covJ = cov_J(frame, Gamma, J)
    Jv = frame.value(J)
    two = bk.rational(2) if bk.is_exact_array(G) else 2.0
    return two * np.einsum("ab,bcd->acd", Jv, G) - covJ


def compatibility_residual(frame: Frame, Gamma: FieldLike, J: FieldLike) -> np.ndarray:
    """(div J)_b = nabla_a J^a_b: zero iff the connection is compatible with
    J in the weak (divergence-trace) sense."""
    return div_J(cov_J(frame, Gamma, J))
