"""Built-in structures with independently derived expected values.

Each builder returns a :class:`Fixture` bundling a validated
:class:`~acgeom.frames.Structure` with a dictionary of closed-form expected
objects (frozen oracles) that the verification suites compare against.
Exact-backend fixtures take rational parameters; float fixtures are seeded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict

import numpy as np

from . import almost_complex as ac
from . import backend as bk
from . import connection as cn
from . import linalg
from .errors import ValidationError
from .frames import ChartFrame, HomogeneousFrame, Structure
from .hermitian import hermitize


@dataclass
class Fixture:
    structure: Structure
    expected: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)


def _r(x):
    return bk.parse_scalar(x)


def standard_J(n: int, backend: str = bk.EXACT) -> np.ndarray:
    J = bk.zeros((n, n), backend)
    m = n // 2
    one = bk.rational(1) if backend == bk.EXACT else 1.0
    for i in range(m):
        J[m + i, i] = one
        J[i, m + i] = -one
    return J


# ---------------------------------------------------------------------------
# product of a line with a 3-dimensional Lie group (dimension 4, exact)
# ---------------------------------------------------------------------------

def solvable_product(a1="1", a2="2", b1="1", b2="1", c1="1", c2="3") -> Fixture:
    """Dimension-4 homogeneous structure: three frame directions span a Lie
    algebra closed by the Jacobi identity (which fixes the top coefficients
    a3, b3, c3), the fourth is a flat factor; g is the identity and J pairs
    directions (1,3) and (2,4).  Expected values: the conformal 1-form B,
    its exterior derivative F, the frame-oriented Hodge dual of F, and the
    exterior derivative of that dual."""
    a1, a2, b1, b2, c1, c2 = (_r(v) for v in (a1, a2, b1, b2, c1, c2))
    delta = a2 * b1 - a1 * b2
    if delta == 0:
        raise ValidationError("parameters must satisfy a2*b1 - a1*b2 != 0")
    a3 = (a2 * a2 * c1 - a1 * b2 * c1 - a1 * a2 * c2 + a1 * b1 * c2) / delta
    b3 = (a2 * b2 * c1 - b1 * b2 * c1 + b1 * b1 * c2 - a1 * b2 * c2) / delta
    c3 = (-b2 * c1 * c1 + a2 * c1 * c2 + b1 * c1 * c2 - a1 * c2 * c2) / delta

    c = bk.zeros((4, 4, 4), bk.EXACT)
    rows = ((0, a3, a2, a1), (1, b3, b2, b1), (2, c3, c2, c1))
    for i, k12, k13, k23 in rows:
        c[i, 0, 1] = -k12
        c[i, 0, 2] = k13
        c[i, 1, 2] = -k23
    c = c - np.swapaxes(c, 1, 2)
    frame = HomogeneousFrame(c)
    if bk.max_abs(frame.jacobi_residual()) != 0:
        raise ValidationError("bracket fails the Jacobi identity")

    J = bk.zeros((4, 4), bk.EXACT)
    J[2, 0] = _r(1); J[0, 2] = _r(-1)
    J[3, 1] = _r(1); J[1, 3] = _r(-1)
    g = bk.eye(4, bk.EXACT)

    u = a2 * c1 - a1 * c2
    v = b2 * c1 - b1 * c2
    B = np.array([b3 / 2, (b1 - a2) * u / (2 * delta), -b1 / 2, -b2 / 2], dtype=object)
    # F = dB has exactly two components in this family:
    #   F_12 = u v / (2 delta)   and   F_23 = -u / 2   (the 31-plane cancels);
    # no component can involve the flat fourth direction since dB is spanned
    # by the differentials of the first three coframe elements.
    f12 = u * v / (2 * delta)
    f23 = -u / 2
    F = bk.zeros((4, 4), bk.EXACT)
    F[0, 1] = f12; F[1, 0] = -f12
    F[1, 2] = f23; F[2, 1] = -f23
    # frame-oriented Hodge dual: *(w1^w2) = w3^w4, *(w2^w3) = w1^w4
    starF = bk.zeros((4, 4), bk.EXACT)
    starF[2, 3] = f12; starF[3, 2] = -f12
    starF[0, 3] = f23; starF[3, 0] = -f23
    # d(*F) = f12 d(w3)^w4 + f23 d(w1)^w4
    dstarF = bk.zeros((4, 4, 4), bk.EXACT)
    coeffs = {
        (0, 1, 3): f12 * c3 + f23 * a3,
        (0, 2, 3): -(f12 * c2 + f23 * a2),
        (1, 2, 3): f12 * c1 + f23 * a1,
    }
    from itertools import permutations
    for (i, j, k), val in coeffs.items():
        for perm in permutations((i, j, k)):
            sign = _perm_sign_of(perm, (i, j, k))
            dstarF[perm] = sign * val

    struct = Structure(frame=frame, J=J, g=g, name="solvable-product")
    struct.validate()
    expected = {
        "B": B, "F": F, "starF": starF, "dstarF": dstarF,
        "sigma_J": -1,
        "unimodular": bool(b1 == a2),
        # within this family, d(*F) = 0 forces u = 0 and hence F = 0
        "dual_closed": bool(u == 0),
        "F_nonzero_coefficients": (f12, f23),
    }
    params = dict(a1=a1, a2=a2, a3=a3, b1=b1, b2=b2, b3=b3, c1=c1, c2=c2, c3=c3)
    return Fixture(struct, expected, params)


def _perm_sign_of(perm, base) -> int:
    order = [base.index(p) for p in perm]
    sign = 1
    order = list(order)
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                sign = -sign
    return sign


def maxwell_family(a1="1", a2="1", c1="1", s="2") -> Fixture:
    """Sub-family b1 = a2, b2 = s a2, c2 = s c1.  Here v = 0, so F reduces
    to the single component F_23 = -u/2 with u = c1 (a2 - s a1); d(*F) is
    then -u/2 d(w1)^w4, which vanishes only together with F itself."""
    a1, a2, c1, s = (_r(v) for v in (a1, a2, c1, s))
    fx = solvable_product(a1=a1, a2=a2, b1=a2, b2=s * a2, c1=c1, c2=s * c1)
    fx.structure = Structure(frame=fx.structure.frame, J=fx.structure.J,
                             g=fx.structure.g, name="maxwell-family")
    return fx


def lcsk_example() -> Fixture:
    """Parameter choice with F = dB = 0 (locally a rescaling makes the
    structure semi-Kaehler)."""
    fx = solvable_product(a1="1", a2="2", b1="1", b2="1", c1="1", c2="2")
    fx.structure = Structure(frame=fx.structure.frame, J=fx.structure.J,
                             g=fx.structure.g, name="lcsk")
    return fx


# ---------------------------------------------------------------------------
# dimension-2 projective structure (exact)
# ---------------------------------------------------------------------------

def two_dim_projective(alpha="1", beta="2", a="1", b="-1", c="2", f="1",
                       p="-2", q="3", eps="1") -> Fixture:
    """Two-dimensional frame with bracket [e1, e2] = -alpha e1 - beta e2,
    the general torsion-free connection in the parameters (a, b, c, f, p, q),
    and the complex structure J e1 = eps e2.  Expected: the canonical
    projective representative in closed form, its 1-form A, the two
    parameter relations equivalent to compatibility, and (when compatible)
    the conformal 1-form B with nabla^p g = 2 B g for the identity metric."""
    alpha, beta, a, b, c, f, p, q, eps = (_r(v) for v in (alpha, beta, a, b, c, f, p, q, eps))
    if eps * eps != 1:
        raise ValidationError("eps must be +1 or -1")
    cs = bk.zeros((2, 2, 2), bk.EXACT)
    cs[0, 0, 1] = -alpha; cs[0, 1, 0] = alpha
    cs[1, 0, 1] = -beta; cs[1, 1, 0] = beta
    frame = HomogeneousFrame(cs)
    J = bk.zeros((2, 2), bk.EXACT)
    J[1, 0] = eps; J[0, 1] = -eps
    Gamma = bk.zeros((2, 2, 2), bk.EXACT)
    Gamma[0, 0, 0] = a; Gamma[0, 0, 1] = alpha + b
    Gamma[0, 1, 0] = b; Gamma[0, 1, 1] = c
    Gamma[1, 0, 0] = f; Gamma[1, 0, 1] = p
    Gamma[1, 1, 0] = p - beta; Gamma[1, 1, 1] = q
    g = bk.eye(2, bk.EXACT)
    struct = Structure(frame=frame, J=J, g=g, Gamma=Gamma, name="surface-projective")
    struct.validate()

    half = bk.rational(1, 2)
    Gp = bk.zeros((2, 2, 2), bk.EXACT)
    Gp[0, 0, 0] = -beta - c;            Gp[0, 0, 1] = half * (3 * alpha + 2 * b - f - q)
    Gp[0, 1, 0] = half * (alpha + 2 * b - f - q); Gp[0, 1, 1] = c
    Gp[1, 0, 0] = f;                    Gp[1, 0, 1] = half * (-a - beta - c + 2 * p)
    Gp[1, 1, 0] = half * (-a - 3 * beta - c + 2 * p); Gp[1, 1, 1] = alpha - f
    A = np.array([half * (a + beta + c), -half * (alpha - f - q)], dtype=object)
    compat_defect = np.array([c - (a + beta - 2 * p), f - (-alpha - 2 * b + q)], dtype=object)
    B = np.array([a + 2 * beta - 2 * p, -2 * alpha - 2 * b + q], dtype=object)
    expected = {
        "p_connection": Gp,
        "A": A,
        "compatibility_defect": compat_defect,
        "B_if_compatible": B,
    }
    params = dict(alpha=alpha, beta=beta, a=a, b=b, c=c, f=f, p=p, q=q, eps=eps)
    return Fixture(struct, expected, params)


def two_dim_projective_compatible(alpha="1", beta="2", a="1", b="-1",
                                  p="-2", q="3", eps="1") -> Fixture:
    """The surface fixture restricted to the two-parameter relations that
    make the projective structure compatible with J."""
    alpha_, beta_, a_, b_, p_, q_ = (_r(v) for v in (alpha, beta, a, b, p, q))
    c_ = a_ + beta_ - 2 * p_
    f_ = -alpha_ - 2 * b_ + q_
    fx = two_dim_projective(alpha=alpha_, beta=beta_, a=a_, b=b_, c=c_, f=f_,
                            p=p_, q=q_, eps=eps)
    fx.structure = Structure(frame=fx.structure.frame, J=fx.structure.J,
                             g=fx.structure.g, Gamma=fx.structure.Gamma,
                             name="surface-projective-compatible")
    return fx


# ---------------------------------------------------------------------------
# flat / torus / nilmanifold metric fixtures
# ---------------------------------------------------------------------------

def kaehler_flat(n: int = 4) -> Fixture:
    """Abelian frame, identity metric, standard J: every invariant is zero."""
    frame = HomogeneousFrame(bk.zeros((n, n, n), bk.EXACT))
    struct = Structure(frame=frame, J=standard_J(n), g=bk.eye(n, bk.EXACT),
                       Gamma=bk.zeros((n, n, n), bk.EXACT), name="kaehler-flat")
    struct.validate()
    return Fixture(struct, expected={"all_zero": True})


def nilmanifold_ak() -> Fixture:
    """Dimension-4 two-step nilpotent frame ([e1, e2] = e3) with a closed
    fundamental form but non-integrable J: almost Kaehler, not Kaehler."""
    c = bk.zeros((4, 4, 4), bk.EXACT)
    c[2, 0, 1] = _r(1); c[2, 1, 0] = _r(-1)
    frame = HomogeneousFrame(c)
    J = bk.zeros((4, 4), bk.EXACT)
    J[2, 0] = _r(-1); J[0, 2] = _r(1)
    J[3, 1] = _r(-1); J[1, 3] = _r(1)
    struct = Structure(frame=frame, J=J, g=bk.eye(4, bk.EXACT), name="nilmanifold-ak")
    struct.validate()
    return Fixture(struct, expected={"almost_kaehler": True, "kaehler": False,
                                     "integrable": False, "B_zero": True})


def nearly_kaehler_six() -> Fixture:
    """The homogeneous dimension-6 structure on a compact group pair whose
    canonical G tensor is totally antisymmetric in arguments: nearly
    Kaehler and not Kaehler (float backend)."""
    n = 6
    c = np.zeros((n, n, n))
    cyc = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    for i, j, k in cyc:
        c[k, i, j] = 1.0
        c[k, j, i] = -1.0
        c[k + 3, i + 3, j + 3] = 1.0
        c[k + 3, j + 3, i + 3] = -1.0
    frame = HomogeneousFrame(c, backend=bk.FLOAT)
    s3 = 1.0 / np.sqrt(3.0)
    J = np.zeros((n, n))
    for i in range(3):
        # J P_i = s3 (P_i + 2 Q_i);  J Q_i = s3 (-2 P_i - Q_i)
        J[i, i] = s3; J[i + 3, i] = 2.0 * s3
        J[i, i + 3] = -2.0 * s3; J[i + 3, i + 3] = -s3
    g = np.zeros((n, n))
    for i in range(3):
        g[i, i] = 2.0
        g[i + 3, i + 3] = 2.0
        g[i, i + 3] = g[i + 3, i] = -1.0
    struct = Structure(frame=frame, J=J, g=g, name="nearly-kaehler-six")
    struct.validate(tol=1e-12)
    return Fixture(struct, expected={"nearly_kaehler": True, "kaehler": False})


def complex_torus(n: int = 4) -> Fixture:
    frame = HomogeneousFrame(bk.zeros((n, n, n), bk.EXACT))
    struct = Structure(frame=frame, J=standard_J(n), g=bk.eye(n, bk.EXACT),
                       name="complex-torus")
    struct.validate()
    return Fixture(struct, expected={"all_zero": True})


# ---------------------------------------------------------------------------
# random generators (exact unless stated)
# ---------------------------------------------------------------------------

def random_J(rng: np.random.Generator, n: int, backend: str = bk.EXACT) -> np.ndarray:
    """Conjugate of the standard J by a random invertible matrix."""
    while True:
        if backend == bk.EXACT:
            P = bk.random_exact_array(rng, (n, n))
        else:
            P = rng.uniform(-1.5, 1.5, size=(n, n))
        try:
            Pi = linalg.inv(P)
            break
        except Exception:
            continue
    return P @ standard_J(n, backend) @ Pi


def random_almost_hermitian(n: int, seed: int = 0, backend: str = bk.EXACT,
                            jacobi: bool = False) -> Fixture:
    """Random frame (antisymmetric bracket coefficients; optionally a genuine
    two-step nilpotent Lie bracket), random J, compatible positive metric."""
    rng = np.random.default_rng(seed)
    if jacobi:
        frame = _nilpotent_frame(rng, n, n - 1, backend)
    else:
        if backend == bk.EXACT:
            c = bk.random_exact_array(rng, (n, n, n))
        else:
            c = rng.uniform(-1.0, 1.0, size=(n, n, n))
        c = c - np.swapaxes(c, 1, 2)
        frame = HomogeneousFrame(c, backend=backend)
    J = random_J(rng, n, backend)
    if backend == bk.EXACT:
        Araw = bk.random_exact_array(rng, (n, n))
        g0 = Araw @ Araw.T + bk.rational(n) * bk.eye(n, bk.EXACT)
    else:
        Araw = rng.uniform(-1.0, 1.0, size=(n, n))
        g0 = Araw @ Araw.T + n * np.eye(n)
    g = hermitize(g0, J)
    struct = Structure(frame=frame, J=J, g=g, name=f"random-almost-hermitian-{n}-{seed}")
    struct.validate(tol=1e-9)
    return Fixture(struct, params={"seed": seed, "n": n})


def _nilpotent_frame(rng: np.random.Generator, n: int, m: int,
                     backend: str = bk.EXACT) -> HomogeneousFrame:
    """Two-step nilpotent bracket: [V, V] in Z, V the first m directions."""
    m = min(max(m, 2), n - 1)
    if backend == bk.EXACT:
        c = bk.zeros((n, n, n), bk.EXACT)
        for z in range(m, n):
            blk = bk.random_exact_array(rng, (m, m))
            c[z, :m, :m] = blk - blk.T
    else:
        c = np.zeros((n, n, n))
        for z in range(m, n):
            blk = rng.uniform(-1.0, 1.0, size=(m, m))
            c[z, :m, :m] = blk - blk.T
    frame = HomogeneousFrame(c, backend=backend)
    assert bk.max_abs(frame.jacobi_residual()) == 0
    return frame


def random_torsion_free(rng: np.random.Generator, frame: HomogeneousFrame) -> np.ndarray:
    n = frame.n
    S = bk.random_exact_array(rng, (n, n, n))
    S = S + np.einsum("bja->baj", S)
    return S - bk.rational(1, 2) * frame.structure_constants()


def random_projective(n: int, seed: int = 0) -> Fixture:
    """Two-step nilpotent frame, random J, random torsion-free base
    connection (exact backend)."""
    rng = np.random.default_rng(seed)
    frame = _nilpotent_frame(rng, n, n - 1)
    J = random_J(rng, n)
    Gamma = random_torsion_free(rng, frame)
    struct = Structure(frame=frame, J=J, Gamma=Gamma,
                       name=f"random-projective-{n}-{seed}")
    struct.validate()
    return Fixture(struct, params={"seed": seed, "n": n})


def _solve_for_g_target(struct: Structure, target: str,
                        nudge: int | None = None) -> Structure:
    """Adjust the base connection within torsion-free connections so the
    canonical projective G tensor satisfies a part-vanishing condition:
    target in {'compatible', 'pnk', 'g_minus_only'}.  With ``nudge`` set,
    a deterministic null-space combination is added to the particular
    solution so that the unconstrained parts of G are generically nonzero."""
    from . import projective as pj

    frame = struct.frame
    n = frame.n
    J = frame.value(struct.J)
    gamma0 = cn.torsion_free_part(frame, frame.value(struct.Gamma))
    gp0, _ = pj.p_connection(Structure(frame=frame, J=J, Gamma=gamma0))
    G0 = ac.g_tensor(frame, gp0, J)

    def residual_of(G):
        Gpl, Gmi = ac.hermitian_split(G, J)
        if target == "compatible":
            return ac.arg_sym(Gmi)
        if target == "pnk":
            return ac.arg_sym(G)
        if target == "g_minus_only":
            return Gpl
        raise ValueError(target)

    pairs = [(j, a) for j in range(n) for a in range(j, n)]
    cols = []
    for b in range(n):
        for (j, a) in pairs:
            S = bk.zeros((n, n, n), bk.EXACT)
            S[b, j, a] = bk.rational(1)
            if a != j:
                S[b, a, j] = bk.rational(1)
            gp1, _ = pj.p_connection(Structure(frame=frame, J=J, Gamma=gamma0 + S))
            G1 = ac.g_tensor(frame, gp1, J)
            cols.append(residual_of(G1 - G0).reshape(-1))
    M = np.stack(cols, axis=1)
    rhs = -residual_of(G0).reshape(-1)
    x = linalg.solve(M, rhs, allow_underdetermined=True)
    if nudge is not None:
        null = linalg.nullspace(M)
        if null.shape[1]:
            rng = np.random.default_rng(nudge)
            w = bk.random_exact_array(rng, (null.shape[1],))
            x = x + null @ w
    S = bk.zeros((n, n, n), bk.EXACT)
    idx = 0
    for b in range(n):
        for (j, a) in pairs:
            S[b, j, a] = S[b, j, a] + x[idx]
            if j != a:
                S[b, a, j] = S[b, a, j] + x[idx]
            idx += 1
    return Structure(frame=frame, J=struct.J, g=struct.g,
                     Gamma=gamma0 + S, name=struct.name)


def compatible_projective(n: int = 4, seed: int = 3) -> Fixture:
    """Projective structure with sym G^p_- = 0 but G^p_+ != 0: the
    distinguished member t = -1 of the family shares geodesics with the
    canonical representative while no other member does."""
    fx = random_projective(n, seed)
    struct = _solve_for_g_target(fx.structure, "compatible")
    struct = Structure(frame=struct.frame, J=struct.J, Gamma=struct.Gamma,
                       name=f"compatible-projective-{n}-{seed}")
    return Fixture(struct, expected={"compatible": True}, params={"seed": seed, "n": n})


def pnk_projective(n: int = 4, seed: int = 5) -> Fixture:
    """Projective structure with G^p(X, X) = 0 (all family members share
    geodesics with the canonical representative) while the skew parts of
    G^p stay nonzero, so the one-parameter family is non-degenerate."""
    fx = random_projective(n, seed)
    struct = _solve_for_g_target(fx.structure, "pnk", nudge=seed + 1)
    struct = Structure(frame=struct.frame, J=struct.J, Gamma=struct.Gamma,
                       name=f"pnk-projective-{n}-{seed}")
    return Fixture(struct, expected={"pnk": True}, params={"seed": seed, "n": n})


def g_minus_only_projective(n: int = 4, seed: int = 7) -> Fixture:
    """Projective structure with G^p_+ = 0."""
    fx = random_projective(n, seed)
    struct = _solve_for_g_target(fx.structure, "g_minus_only")
    struct = Structure(frame=struct.frame, J=struct.J, Gamma=struct.Gamma,
                       name=f"g-minus-only-projective-{n}-{seed}")
    return Fixture(struct, expected={"g_minus_only": True}, params={"seed": seed, "n": n})


def almost_hermitian_six(seed: int = 1) -> Fixture:
    """Seeded float dimension-6 almost Hermitian structure on a two-step
    nilpotent frame; generically the Weyl-derived G_+ is nonzero, which is
    what the t-family conformality dichotomy needs."""
    return random_almost_hermitian(6, seed=seed, backend=bk.FLOAT, jacobi=True)


# ---------------------------------------------------------------------------
# chart (coordinate) fixture, float
# ---------------------------------------------------------------------------

def chart_projective(basepoint=(0.3, -0.2), h: float = 1e-4) -> Fixture:
    """Coordinate frame on a surface with a position-dependent complex
    structure and the flat coordinate connection as base representative.
    The base representative has vanishing curvature trace, so the
    obstruction 2-form of the canonical representative equals d A of the
    base."""

    def J_field(x):
        a = x[0]
        b = 1.0 + x[1] * x[1]
        return np.array([[a, b], [-(1.0 + a * a) / b, -a]])

    frame = ChartFrame(2, basepoint=np.asarray(basepoint, float), h=h)
    gamma = np.zeros((2, 2, 2))
    struct = Structure(frame=frame, J=J_field, Gamma=gamma, name="chart-projective")
    struct.validate(tol=1e-9)
    return Fixture(struct, params={"basepoint": tuple(float(v) for v in basepoint), "h": h})


# ---------------------------------------------------------------------------
# solvable frames with an integrable J (exact)
# ---------------------------------------------------------------------------

def _affine_complex_constants(n: int) -> np.ndarray:
    """Structure constants of the real form of the complex affine algebra
    (dimension 4), padded with abelian directions up to dimension n."""
    c = bk.zeros((n, n, n), bk.EXACT)

    def setc(i, j, k, v):
        c[i, j, k] = bk.rational(v)
        c[i, k, j] = bk.rational(-v)

    setc(2, 0, 2, 1)
    setc(3, 0, 3, 1)
    setc(3, 1, 2, 1)
    setc(2, 1, 3, -1)
    return c


def _adjacent_J(n: int) -> np.ndarray:
    J = bk.zeros((n, n), bk.EXACT)
    for p in range(0, n, 2):
        J[p + 1, p] = bk.rational(1)
        J[p, p + 1] = bk.rational(-1)
    return J


def complex_solvable() -> Fixture:
    """Dimension-4 solvable frame whose J has vanishing Nijenhuis tensor
    (integrable) with the identity metric.  The Levi-Civita G has zero
    anti-linear-pair part but is itself nonzero, and the Weyl-derived G
    vanishes entirely: the conformal classification reports the
    locally-conformally-Kaehler flag."""
    frame = HomogeneousFrame(_affine_complex_constants(4))
    J = _adjacent_J(4)
    g = bk.eye(4, bk.EXACT)
    struct = Structure(frame=frame, J=J, g=g, name="complex-solvable")
    struct.validate(tol=0.0)
    B = bk.zeros((4,), bk.EXACT)
    B[0] = bk.rational(-1)
    return Fixture(struct, expected={"B": B})


def hermitian_solvable(seed: int = 4) -> Fixture:
    """The dimension-4 integrable solvable frame with a seeded compatible
    metric that is not the identity: Levi-Civita G gains a nonzero
    linear-pair part while the anti-linear-pair part stays zero, and the
    Weyl-derived G still vanishes (locally-conformally-Kaehler)."""
    frame = HomogeneousFrame(_affine_complex_constants(4))
    J = _adjacent_J(4)
    rng = np.random.default_rng(seed)
    A = bk.random_exact_array(rng, (4, 4))
    g = hermitize(A @ A.T + bk.rational(3) * bk.eye(4, bk.EXACT), J)
    struct = Structure(frame=frame, J=J, g=g, name="hermitian-solvable")
    struct.validate(tol=0.0)
    return Fixture(struct, params={"seed": seed})


def complex_solvable_six(seed: int = 11) -> Fixture:
    """Dimension-6 frame (the dimension-4 solvable algebra plus two abelian
    directions) with integrable J and a seeded compatible metric.  The
    Weyl-derived G keeps a nonzero linear-pair part here, so the structure
    is conformally Hermitian without being locally conformally Kaehler."""
    frame = HomogeneousFrame(_affine_complex_constants(6))
    J = _adjacent_J(6)
    rng = np.random.default_rng(seed)
    A = bk.random_exact_array(rng, (6, 6))
    g = hermitize(A @ A.T + bk.rational(4) * bk.eye(6, bk.EXACT), J)
    struct = Structure(frame=frame, J=J, g=g, name="complex-solvable-six")
    struct.validate(tol=0.0)
    return Fixture(struct, params={"seed": seed})


def chart_conformal(basepoint=(0.25, -0.1, 0.3, 0.15), h: float = 1e-4) -> Fixture:
    """Coordinate frame in dimension 4 with a position-dependent J (a varying
    plane block plus a constant block) and a position-dependent compatible
    metric.  The derived 2-form of the conformal 1-form is nonzero and, to
    finite-difference accuracy, unchanged when the metric is rescaled by a
    positive function."""

    def J_field(x):
        a = 0.4 * x[0]
        b = 1.0 + x[1] * x[1]
        J = np.zeros((4, 4))
        J[:2, :2] = np.array([[a, b], [-(1.0 + a * a) / b, -a]])
        J[2, 3] = 1.0
        J[3, 2] = -1.0
        return J

    def g_field(x):
        raw = np.eye(4) + 0.3 * np.outer([x[2], 0.0, x[0], 0.0], [x[2], 0.0, x[0], 0.0])
        return hermitize(raw, J_field(x))

    frame = ChartFrame(4, basepoint=np.asarray(basepoint, float), h=h)
    struct = Structure(frame=frame, J=J_field, g=g_field, name="chart-conformal")
    struct.validate(tol=1e-9)
    return Fixture(struct, params={"basepoint": tuple(float(v) for v in basepoint), "h": h})


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

BUILDERS: Dict[str, Callable[..., Fixture]] = {
    "solvable-product": solvable_product,
    "maxwell-family": maxwell_family,
    "lcsk": lcsk_example,
    "surface-projective": two_dim_projective,
    "surface-projective-compatible": two_dim_projective_compatible,
    "kaehler-flat": kaehler_flat,
    "nilmanifold-ak": nilmanifold_ak,
    "nearly-kaehler-six": nearly_kaehler_six,
    "complex-torus": complex_torus,
    "compatible-projective": compatible_projective,
    "pnk-projective": pnk_projective,
    "g-minus-only-projective": g_minus_only_projective,
    "almost-hermitian-six": almost_hermitian_six,
    "chart-projective": chart_projective,
    "complex-solvable": complex_solvable,
    "hermitian-solvable": hermitian_solvable,
    "complex-solvable-six": complex_solvable_six,
    "chart-conformal": chart_conformal,
}


def build(name: str, **params) -> Fixture:
    if name not in BUILDERS:
        raise ValidationError(f"unknown fixture '{name}'", known=sorted(BUILDERS))
    return BUILDERS[name](**params)
