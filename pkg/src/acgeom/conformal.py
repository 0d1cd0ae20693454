"""Conformal almost Hermitian calculus.

The distinguished 1-form of an almost Hermitian structure (one half of the
Lee form of the literature) is

    ``B_a = (1/(n-2)) J^c_b nabla_c J^b_a``        (Levi-Civita nabla)

and transforms as ``B -> B + Upsilon`` under a conformal rescaling whose
logarithmic derivative at the point is Upsilon.  The canonical Weyl
connection of the conformal class is

    ``nabla^c_a Y^b = nabla_a Y^b - B_a Y^b + B^b Y_a - B_c Y^c delta^b_a``

It satisfies ``nabla^c g = 2 B g`` and is conformally invariant, as is its
``nabla^c J`` (the mu-invariant).  Its G tensor generates the canonical
conformal almost-complex connection ``nabla^gc = nabla^c + G^c(Y, X)`` and
the family ``nabla^{c,t} = nabla^gc + t G^c_plus(X, Y)``.

Any algebraic torsion T determines a unique conformal compatible connection:
``nabla^T = nabla^c + G^T(Y, X)`` with

    ``A^T_d = (1/(n-2)) ( T^a_{ad}
              + (1/2) J^a_c J^b_d (T_a{}^c{}_b - T_{ba}{}^c - T^c{}_{ba}) )``
    ``G^T_{abc} = A_a g_{bc} - A_b g_{ac} - A_c g_{ab}
              + (1/2) (T_{cab} - T_{abc} - T_{bca})``

both conformally invariant; the 1-form of nabla^T is B + A^T.  The
conformally invariant screening map ``V(T) = J G^T(., .) + G^T(J., .)``
vanishes on the torsion of nabla^gc and characterizes it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import almost_complex as ac
from . import backend as bk
from . import connection as cn
from . import hermitian as hm
from . import linalg
from . import tensor as tn
from .errors import DimensionError, ValidationError
from .frames import FieldLike, Frame, Structure, exterior_derivative


def _one_over(n_minus: int, arr):
    return bk.rational(1, n_minus) if bk.is_exact_array(arr) else 1.0 / n_minus


def b_form(frame: Frame, g: FieldLike, J: FieldLike, Gamma: Optional[FieldLike] = None) -> np.ndarray:
    """B_a = (1/(n-2)) J^c_b nabla_c J^b_a (Levi-Civita unless Gamma given)."""
    n = frame.n
    if n == 2:
        raise DimensionError("the conformal 1-form is undefined in dimension 2 (divides by n - 2)")
    if Gamma is None:
        Gamma = cn.levi_civita_connection(frame, g)
    covJ = ac.cov_J(frame, Gamma, J)  # covJ[b, d, a] = nabla_a J^b_d
    Jv = frame.value(J)
    return _one_over(n - 2, covJ) * np.einsum("cb,bac->a", Jv, covJ)


def conformal_change_lc(frame: Frame, g: FieldLike, Gamma: FieldLike, Upsilon: np.ndarray) -> np.ndarray:
    """Levi-Civita connection after a conformal rescaling with logarithmic
    derivative Upsilon at the point (the metric value itself is unchanged):
    Delta Gamma[b, j, a] = U_a d^b_j + U_j d^b_a - g_{ja} U^b."""
    gv = frame.value(g)
    ginv = linalg.inv(gv)
    Uup = ginv @ Upsilon
    n = frame.n
    ident = bk.eye(n, bk.backend_of(gv))
    delta = (
        np.einsum("a,bj->bja", Upsilon, ident)
        + np.einsum("j,ba->bja", Upsilon, ident)
        - np.einsum("ja,b->bja", gv, Uup)
    )
    return frame.value(Gamma) + delta


def weyl_connection(struct: Structure):
    """Canonical Weyl connection of the conformal class determined by
    (g, J): returns (Gamma^c, B, mu) where mu = nabla^c J."""
    frame = struct.frame
    gv = frame.value(struct.g)
    Jv = frame.value(struct.J)
    lc = cn.levi_civita_connection(frame, struct.g)
    B = b_form(frame, struct.g, struct.J, lc)
    ginv = linalg.inv(gv)
    Bup = ginv @ B
    ident = bk.eye(frame.n, bk.backend_of(gv))
    delta = (
        -np.einsum("a,bj->bja", B, ident)
        + np.einsum("b,ja->bja", Bup, gv)
        - np.einsum("j,ba->bja", B, ident)
    )
    gamma_c = lc + delta
    mu = ac.cov_J(frame, gamma_c, struct.J)
    return gamma_c, B, mu


def weyl_g_tensor(struct: Structure) -> np.ndarray:
    gamma_c, _, _ = weyl_connection(struct)
    return ac.g_tensor(struct.frame, gamma_c, struct.J)


def gc_connection(struct: Structure) -> np.ndarray:
    """Canonical conformal almost-complex connection nabla^c + G^c(Y, X)."""
    gamma_c, _, _ = weyl_connection(struct)
    G = ac.g_tensor(struct.frame, gamma_c, struct.J)
    return cn.add_bilinear_term(struct.frame, gamma_c, G, direction_first=False)


def ct_family(struct: Structure, t) -> np.ndarray:
    """nabla^{c,t} = nabla^gc + t G^c_plus(X, Y) (X the direction)."""
    gamma_c, _, _ = weyl_connection(struct)
    return ac.t_family(struct.frame, gamma_c, struct.J, t)


def conformal_defect(frame: Frame, Gamma: FieldLike, g: FieldLike) -> np.ndarray:
    """Distance of nabla g from the line spanned by g: the g-trace-free part
    of the metric derivative.  Zero exactly when the connection is conformal
    (nabla_a g_{bc} = phi_a g_{bc} for some 1-form phi)."""
    gv = frame.value(g)
    mg = cn.metric_derivative(frame, Gamma, g)
    ginv = linalg.inv(gv)
    phi = _one_over(frame.n, mg) * np.einsum("bc,bca->a", ginv, mg)
    return mg - np.einsum("bc,a->bca", gv, phi)


def ct_metricity_residual(struct: Structure, t) -> np.ndarray:
    """Residual of the closed-form metric derivative of nabla^{c,t}:

        nabla^{c,t}_a g_{bc} = 2 B_a g_{bc}
            - t (g_{dc} Gplus^d_{ab} + g_{bd} Gplus^d_{ac})

    Identically zero; the t-term is why only t = 0 is conformal."""
    frame = struct.frame
    gv = frame.value(struct.g)
    gamma_c, B, _ = weyl_connection(struct)
    G = ac.g_tensor(frame, gamma_c, struct.J)
    Gp, _ = ac.hermitian_split(G, frame.value(struct.J))
    gamma_t = ct_family(struct, t)
    mg = cn.metric_derivative(frame, gamma_t, struct.g)
    two = bk.rational(2) if bk.is_exact_array(gv) else 2.0
    tt = bk.parse_scalar(t) if bk.is_exact_array(gv) else float(t)
    S = np.einsum("dab,dc->bca", Gp, gv) + np.einsum("dac,bd->bca", Gp, gv)
    return mg - (two * np.einsum("a,bc->bca", B, gv) - tt * S)


def torsion_to_conformal(g: np.ndarray, J: np.ndarray, T: np.ndarray):
    """(A^T, G^T raised): the conformally invariant decomposition data of the
    unique conformal compatible connection with torsion T."""
    n = g.shape[0]
    if n == 2:
        raise DimensionError("conformal torsion decomposition undefined in dimension 2")
    ginv = linalg.inv(g)
    Tl = np.einsum("px,xqr->pqr", g, T)  # value slot lowered
    half = bk.rational(1, 2) if bk.is_exact_array(T) else 0.5
    # X_{acb} = T_a{}^c{}_b - T_{ba}{}^c - T^c{}_{ba}
    X = (
        np.einsum("ax,cy,xyb->acb", g, ginv, T)
        - np.einsum("bx,cz,xaz->acb", g, ginv, T)
        - np.einsum("cba->acb", T)
    )
    trace_term = np.einsum("aad->d", T)
    A = _one_over(n - 2, T) * (trace_term + half * np.einsum("ac,bd,acb->d", J, J, X))
    Gl = (
        np.einsum("a,bc->abc", A, g)
        - np.einsum("b,ac->abc", A, g)
        - np.einsum("c,ab->abc", A, g)
        + half * (np.einsum("cab->abc", Tl) - Tl - np.einsum("bca->abc", Tl))
    )
    Gt = np.einsum("ax,xbc->abc", ginv, Gl)
    return A, Gt


def conformal_connection_with_torsion(struct: Structure, T: np.ndarray):
    """The unique compatible conformal connection with torsion T; returns
    (Gamma^T, B_prime) where nabla^T g = 2 B_prime g."""
    frame = struct.frame
    gv = frame.value(struct.g)
    Jv = frame.value(struct.J)
    gamma_c, B, _ = weyl_connection(struct)
    A, Gt = torsion_to_conformal(gv, Jv, T)
    gamma_T = cn.add_bilinear_term(frame, gamma_c, Gt, direction_first=False)
    return gamma_T, A + B


def v_invariant(g: np.ndarray, J: np.ndarray, T: np.ndarray) -> np.ndarray:
    """V(T) = J G^T(., .) + G^T(J., .): the conformally invariant screening
    of an algebraic torsion; zero exactly on the torsion of nabla^gc."""
    _, Gt = torsion_to_conformal(g, J, T)
    return np.einsum("ax,xbc->abc", J, Gt) + np.einsum("axc,xb->abc", Gt, J)


def lee_form(struct: Structure) -> np.ndarray:
    """The Lee form (twice the distinguished 1-form B)."""
    _, B, _ = weyl_connection(struct)
    two = bk.rational(2) if bk.is_exact_array(B) else 2.0
    return two * B


def faraday(struct: Structure) -> np.ndarray:
    """F = dB: the curvature obstruction to scaling away B."""
    frame = struct.frame
    if not callable(struct.g) and not callable(struct.J):
        _, B, _ = weyl_connection(struct)
        return exterior_derivative(frame, B)
    B_field = lambda x: weyl_connection(struct.at(x))[1]
    return exterior_derivative(frame, B_field)


def sigma_J(struct: Structure) -> int:
    """Orientation of J relative to the frame: the sign of the top power of
    the fundamental form against the frame volume form."""
    gv = struct.frame.value(struct.g)
    Jv = struct.frame.value(struct.J)
    omega = hm.fundamental_form(gv, Jv)
    n = struct.n
    top = omega
    for _ in range(n // 2 - 1):
        top = tn.wedge(top, omega)
    coeff = top[tuple(range(n))]
    val = float(coeff)
    if val == 0.0 or (not bk.is_exact_array(omega) and abs(val) < 1e-12):
        raise ValidationError("fundamental form is degenerate")
    return 1 if val > 0 else -1


def two_form_split(F: np.ndarray, g: np.ndarray, J: np.ndarray, sigma: int):
    """Split a 2-form by J-type and by J-oriented self-duality (dim 4):
    returns dict with keys 'J+', 'J-', '*+', '*-'."""
    if g.shape[0] != 4:
        raise DimensionError("self-dual split implemented in dimension 4")
    half = bk.rational(1, 2) if bk.is_exact_array(F) else 0.5
    FJJ = np.einsum("xy,xa,yb->ab", F, J, J)
    star = tn.hodge_star(F, g, orientation=sigma)
    return {
        "J+": half * (F + FJJ),
        "J-": half * (F - FJJ),
        "*+": half * (F + star),
        "*-": half * (F - star),
    }


def maxwell_current(struct: Structure, F: Optional[np.ndarray] = None) -> np.ndarray:
    """delta F (dim 4): the current of the Faraday 2-form."""
    if struct.n != 4:
        raise DimensionError("the current is computed in dimension 4")
    frame = struct.frame
    gv = frame.value(struct.g)
    if F is None:
        F = faraday(struct)
    d_of = lambda form: exterior_derivative(frame, form)
    return tn.codifferential_2form_dim4(F, gv, d_of)


@dataclass
class ConformalClassification:
    """Residuals of the conformal almost Hermitian type conditions.

    ``csk`` is the local obstruction ||dB|| to rescaling the structure to a
    semi-Kaehler one (zero iff locally conformally semi-Kaehler)."""

    lck: float
    nkw: float
    lcak: float
    conformal_hermitian: float
    w1w2w4: float
    w1w3w4: float
    w2w3w4: float
    csk: float
    faraday_sd: Optional[float]
    faraday_asd: Optional[float]
    maxwell: Optional[float]

    def flags(self, tol: float) -> dict:
        out = {}
        for name in (
            "lck", "nkw", "lcak", "conformal_hermitian",
            "w1w2w4", "w1w3w4", "w2w3w4", "csk",
            "faraday_sd", "faraday_asd", "maxwell",
        ):
            v = getattr(self, name)
            out[name] = None if v is None else v <= tol
        return out


def classify_conformal(struct: Structure) -> ConformalClassification:
    frame = struct.frame
    gv = frame.value(struct.g)
    Jv = frame.value(struct.J)
    n = struct.n
    gamma_c, B, _ = weyl_connection(struct)
    G = ac.g_tensor(frame, gamma_c, struct.J)
    Gp, Gm = ac.hermitian_split(G, Jv)
    F = faraday(struct)
    # locally conformally almost Kaehler:
    #   n >= 6: the fundamental form is exact against the 1-form B, which is
    #   equivalent to the vanishing of Alt g(., J G^c(., .));
    #   n = 4: that wedge identity holds automatically and the condition is
    #   the closedness of B.
    if n == 4:
        lcak = bk.max_abs(F)
    else:
        lcak = bk.max_abs(tn.alt(np.einsum("xb,be,eyz->xyz", gv, Jv, G)))
    sd = asd = mx = None
    if n == 4:
        sigma = sigma_J(struct)
        split = two_form_split(F, gv, Jv, sigma)
        sd = bk.max_abs(split["*-"])
        asd = bk.max_abs(split["*+"])
        mx = bk.max_abs(maxwell_current(struct, F))
    return ConformalClassification(
        lck=bk.max_abs(G),
        nkw=bk.max_abs(ac.arg_sym(G)),
        lcak=lcak,
        conformal_hermitian=bk.max_abs(Gm),
        w1w2w4=bk.max_abs(Gp),
        w1w3w4=bk.max_abs(ac.arg_sym(Gm)),
        w2w3w4=bk.max_abs(tn.alt(np.einsum("xb,be,eyz->xyz", gv, Jv, Gm))),
        csk=bk.max_abs(F),
        faraday_sd=sd,
        faraday_asd=asd,
        maxwell=mx,
    )
