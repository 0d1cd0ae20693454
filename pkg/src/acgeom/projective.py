"""Projective almost complex calculus.

A projective structure is presented by a torsion-free base connection; two
presentations are equivalent when they differ by

    ``nabla-hat_a Y^b = nabla_a Y^b + U_a Y^b + U_c Y^c delta^b_a``.

Each presentation carries the 1-form

    ``A^nabla_c = -(1/n) (nabla_a J^a_b) J^b_c``

which shifts by U under equivalence, so ``nabla^p := nabla - A``-change is
the unique representative whose A vanishes (equivalently, the unique
representative with ``nabla_a J^a_b = 0``).  Its G tensor generates

    ``nabla^gp = nabla^p + G^p(Y, X)``      (almost complex)
    ``nabla^{p,t} = nabla^gp + t G^p_plus(X, Y)``
    ``nabla^JP = nabla^{p,-1}``             (distinguished member)

nabla^{p,t} shares the geodesics of nabla^p iff the symmetric part of the
difference tensor vanishes; for t = -1 that is the compatibility condition
``sym G^p_minus = 0``, and then the torsion of nabla^JP is
``-4 skew G^p_plus - 2 skew G^p_minus``.

The curvature trace gives the fundamental 2-form invariant

    ``F^p = -(1/(n+1)) R^p_{ab}{}^c{}_c = (2/(n+1)) Ric^p_{[ab]}``  (sign in
    our layout handled below),

closed, and exact against the A-form of any scale (a representative with
vanishing curvature trace): ``F^p = d A^scale``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import almost_complex as ac
from . import backend as bk
from . import connection as cn
from . import linalg
from .errors import SingularError, ValidationError
from .frames import ChartFrame, FieldLike, Frame, Structure, exterior_derivative


def _require_gamma(struct: Structure) -> np.ndarray:
    if struct.Gamma is None:
        raise ValidationError("projective calculus requires a base connection")
    return struct.frame.value(struct.Gamma)


def projective_change(frame: Frame, Gamma: FieldLike, Upsilon: np.ndarray) -> np.ndarray:
    """Delta Gamma[b, j, a] = U_a d^b_j + U_j d^b_a."""
    Gv = frame.value(Gamma)
    ident = bk.eye(frame.n, bk.backend_of(Gv))
    return Gv + np.einsum("a,bj->bja", Upsilon, ident) + np.einsum("j,ba->bja", Upsilon, ident)


def a_form(frame: Frame, Gamma: FieldLike, J: FieldLike) -> np.ndarray:
    """A^nabla_c = -(1/n) (nabla_a J^a_b) J^b_c."""
    covJ = ac.cov_J(frame, Gamma, J)  # covJ[b, d, a] = nabla_a J^b_d
    div = np.einsum("aba->b", covJ)
    Jv = frame.value(J)
    factor = bk.rational(-1, frame.n) if bk.is_exact_array(covJ) else -1.0 / frame.n
    return factor * np.einsum("b,bc->c", div, Jv)


def p_connection(struct: Structure):
    """Canonical representative of the projective class of the torsion-free
    part of the base connection: returns (Gamma^p, A) with A the form of the
    input representative; Gamma^p itself has vanishing A-form."""
    frame = struct.frame
    gamma0 = cn.torsion_free_part(frame, _require_gamma(struct))
    A = a_form(frame, gamma0, struct.J)
    return projective_change(frame, gamma0, -A), A


def gp_connection(struct: Structure) -> np.ndarray:
    gamma_p, _ = p_connection(struct)
    return ac.g_connection(struct.frame, gamma_p, struct.J)


def pt_family(struct: Structure, t) -> np.ndarray:
    gamma_p, _ = p_connection(struct)
    return ac.t_family(struct.frame, gamma_p, struct.J, t)


def jp_connection(struct: Structure) -> np.ndarray:
    """The distinguished member t = -1 of the family."""
    return pt_family(struct, -1)


def jp_torsion_predicted(G: np.ndarray, J: np.ndarray) -> np.ndarray:
    """Torsion of nabla^JP in closed form: -4 skew G_+ - 2 skew G_-,
    in torsion layout T[b, x, y] (first vector argument x)."""
    return ac.family_torsion_predicted(G, J, -1)


def difference_tensor(frame: Frame, Gamma1: FieldLike, Gamma2: FieldLike) -> np.ndarray:
    """D with nabla1_X Y = nabla2_X Y + D(X, Y), layout D[b, x, y]
    (X the direction of differentiation)."""
    D = frame.value(Gamma1) - frame.value(Gamma2)
    return np.einsum("bya->bay", D)


def geodesic_residual(frame: Frame, Gamma1: FieldLike, Gamma2: FieldLike) -> np.ndarray:
    """Symmetric part of the difference tensor: zero exactly when the two
    connections have the same parametrised geodesics."""
    D = difference_tensor(frame, Gamma1, Gamma2)
    return ac.arg_sym(D)


def path_residual(frame: Frame, Gamma1: FieldLike, Gamma2: FieldLike):
    """Fit the symmetric part of the difference to the reparametrisation
    pattern U_a d^b_j + U_j d^b_a; returns (residual tensor, U).  Zero
    residual exactly when the connections share unparametrised paths."""
    n = frame.n
    S = geodesic_residual(frame, Gamma1, Gamma2)  # S[b, x, y] symmetric in x, y
    factor = bk.rational(1, n + 1) if bk.is_exact_array(S) else 1.0 / (n + 1)
    U = factor * np.einsum("bby->y", S)
    ident = bk.eye(n, bk.backend_of(S))
    pattern = np.einsum("x,by->bxy", U, ident) + np.einsum("y,bx->bxy", U, ident)
    return S - pattern, U


def projective_faraday(struct: Structure) -> np.ndarray:
    """F^p: the curvature-trace 2-form of the canonical representative,
    normalised so that F^p = d A^scale for every scale.  On a chart frame
    the canonical representative is differentiated as a field."""
    if isinstance(struct.frame, ChartFrame):
        return faraday_of_representative(
            struct.frame, lambda x: p_connection(struct.at(x))[0])
    gamma_p, _ = p_connection(struct)
    return faraday_of_representative(struct.frame, gamma_p)


def faraday_of_representative(frame: Frame, Gamma: FieldLike) -> np.ndarray:
    """F^nabla = -(1/(n+1)) R_{ab}{}^c{}_c for a torsion-free representative
    (layout F[a, b])."""
    R = cn.curvature(frame, Gamma)
    W = cn.curvature_trace(R)
    factor = bk.rational(-1, frame.n + 1) if bk.is_exact_array(W) else -1.0 / (frame.n + 1)
    return factor * W


def hermitian_form_split(F: np.ndarray, J: np.ndarray):
    """F_pm(., .) = F(., .) pm F(J., J.) (no half)."""
    FJJ = np.einsum("xy,xa,yb->ab", F, J, J)
    return F + FJJ, F - FJJ


def find_scale(struct: Structure):
    """Search the projective class of the base connection for a scale (a
    representative with vanishing curvature trace) reachable by a
    frame-constant change U; returns (Gamma_scale, U).  Raises SingularError
    when no frame-constant solution of d U = F^nabla exists."""
    frame = struct.frame
    gamma0 = cn.torsion_free_part(frame, _require_gamma(struct))
    F0 = faraday_of_representative(frame, gamma0)
    c = frame.structure_constants()
    n = frame.n
    # for a frame-constant 1-form, (dU)_{ij} = -U_k c^k_{ij}
    rows = []
    rhs = []
    for i in range(n):
        for j in range(i + 1, n):
            rows.append(-c[:, i, j])
            rhs.append(F0[i, j])
    M = np.array(rows, dtype=object) if bk.is_exact_array(F0) else np.asarray(rows, dtype=float)
    b = np.array(rhs, dtype=object) if bk.is_exact_array(F0) else np.asarray(rhs, dtype=float)
    U = linalg.solve(M, b, allow_underdetermined=True)
    gamma_s = projective_change(frame, gamma0, U)
    resid = faraday_of_representative(frame, gamma_s)
    if not bk.is_zero(resid, tol=0.0 if bk.is_exact_array(resid) else 1e-9):
        raise SingularError("no frame-constant scale in this projective class",
                            residual=bk.max_abs(resid))
    return gamma_s, U


def faraday_via_scale(struct: Structure) -> np.ndarray:
    """F^p computed as d A^scale from a scale representative.  On a chart
    frame the 1-form is differentiated as a field."""
    frame = struct.frame
    gamma_s, _ = find_scale(struct)
    if isinstance(frame, ChartFrame):
        return exterior_derivative(
            frame, lambda x: a_form(frame.at(x), gamma_s, struct.J))
    A = a_form(frame, gamma_s, struct.J)
    return exterior_derivative(frame, A)


@dataclass
class ProjectiveClassification:
    """Residuals of the projectively invariant type conditions on G^p."""

    gp_zero: float
    pnk: float
    gp_plus_only: float
    gp_minus_only: float
    compatible: float
    gp_plus_diag_zero: float
    integrable: float
    f_zero: float
    f_plus_zero: float
    f_minus_zero: float

    def flags(self, tol: float) -> dict:
        return {
            name: getattr(self, name) <= tol
            for name in (
                "gp_zero", "pnk", "gp_plus_only", "gp_minus_only",
                "compatible", "gp_plus_diag_zero", "integrable",
                "f_zero", "f_plus_zero", "f_minus_zero",
            )
        }


def classify_projective(struct: Structure) -> ProjectiveClassification:
    frame = struct.frame
    Jv = frame.value(struct.J)
    gamma_p, _ = p_connection(struct)
    G = ac.g_tensor(frame, gamma_p, struct.J)
    Gp, Gm = ac.hermitian_split(G, Jv)
    F = faraday_of_representative(frame, gamma_p)
    Fp, Fm = hermitian_form_split(F, Jv)
    return ProjectiveClassification(
        gp_zero=bk.max_abs(G),
        pnk=bk.max_abs(ac.arg_sym(G)),
        gp_plus_only=bk.max_abs(Gm),
        gp_minus_only=bk.max_abs(Gp),
        compatible=bk.max_abs(ac.arg_sym(Gm)),
        gp_plus_diag_zero=bk.max_abs(ac.arg_sym(Gp)),
        integrable=bk.max_abs(ac.nijenhuis(Gm)),
        f_zero=bk.max_abs(F),
        f_plus_zero=bk.max_abs(Fp),
        f_minus_zero=bk.max_abs(Fm),
    )


@dataclass
class Reconstruction:
    """Decomposition of an almost complex connection with geodesics in the
    projective class: nabla' = nabla^JP + (1/2) T with U the path-change
    form of its torsion-free part (always zero when nabla' preserves J)."""

    compatible_residual: float
    preserves_J_residual: float
    pattern_residual: float
    upsilon: np.ndarray
    torsion_delta: np.ndarray
    skew_residual: float
    anti_hermitian_residual: float


def reconstruct_from_complex(struct: Structure, Gamma_prime: FieldLike) -> Reconstruction:
    frame = struct.frame
    Jv = frame.value(struct.J)
    gp_res = bk.max_abs(ac.cov_J(frame, Gamma_prime, struct.J))
    gamma_p, _ = p_connection(struct)
    gamma_hat = cn.torsion_free_part(frame, frame.value(Gamma_prime))
    pattern, U = path_residual(frame, gamma_hat, gamma_p)
    G = ac.g_tensor(frame, gamma_p, struct.J)
    _, Gm = ac.hermitian_split(G, Jv)
    jp = jp_connection(struct)
    T = 2 * difference_tensor(frame, Gamma_prime, jp)
    anti = np.einsum("bxy,xc,yd->bcd", T, Jv, Jv) + T
    return Reconstruction(
        compatible_residual=bk.max_abs(ac.arg_sym(Gm)),
        preserves_J_residual=gp_res,
        pattern_residual=bk.max_abs(pattern),
        upsilon=U,
        torsion_delta=T,
        skew_residual=bk.max_abs(T + np.einsum("byx->bxy", T)),
        anti_hermitian_residual=bk.max_abs(anti),
    )
