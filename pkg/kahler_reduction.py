"""
Kähler reduction of z-standard Sasaki Lie algebras and its inverse.

A z-standard Sasaki algebra g̃ = g ⋊ ⟨e0⟩ has b = -φ(e0) and ξ central in g;
quotienting by ⟨b, ξ⟩ leaves a pseudo-Kähler algebra (ǧ, J, ω) together with
a derivation Ď and a constant h. construct_sasaki rebuilds g̃ from such a
seed on the basis (ǧ..., b, ξ, e0):

    [x, y] = [x, y]_ǧ - τ (Ďω)(x, y) b - 2 ω(x, y) ξ
    [e0, x] = Ďx,  [e0, b] = h b - 2τ ξ,  [e0, ξ] = 0
    g̃ = ǧ + τ b⊗b + ξ⊗ξ + τ e0⊗e0
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from exact_linalg import (
    ONE,
    ZERO,
    Matrix,
    Vector,
    block_diagonal,
    commutator,
    coordinates,
    is_zero,
    kernel,
    to_scalar,
    unit,
)
from lie_algebra import (
    Form,
    LieAlgebra,
    act,
    ce_d,
    interior,
    is_derivation,
    is_nilpotent,
    pullback,
    quotient,
)
from metric_geometry import MetricLieAlgebra, flat, sharp, sym_anti_split
from contact_metric import AlmostContactData
from contact_metric import reverse_metric_sign as reverse_contact_sign
from standard_decomposition import (
    IdealFrame,
    RankOneReport,
    StandardDecomposition,
    check_rank_one_sasaki,
    check_z_standard,
)
from sasaki_errors import (
    BlockFormViolation,
    CommutatorNonzero,
    NotALieAlgebra,
    NotZStandard,
    RepresentationConditionViolated,
    SeedInvariantViolated,
    SymmetricPartNotDerivation,
)

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class KahlerSeed:
    """Input of the constructive extension."""

    M: MetricLieAlgebra
    J: Matrix
    omega: Form
    D: Matrix
    h: Fraction
    tau: Fraction

    @property
    def dim(self) -> int:
        return self.M.dim


# --- checks ------------------------------------------------------------------

@dataclass(frozen=True)
class KahlerResult:
    ok: bool
    failed: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def complex_nijenhuis_vanishes(L: LieAlgebra, J: Matrix) -> bool:
    n = L.dim
    cols = J.columns()
    for i in range(n):
        for j in range(i + 1, n):
            ei, ej = unit(n, i), unit(n, j)
            terms = (
                L.bracket(cols[i], cols[j]),
                J @ L.bracket(cols[i], ej),
                J @ L.bracket(ei, cols[j]),
                L.basis_bracket(i, j),
            )
            if not is_zero(a - b - c - d for a, b, c, d in zip(*terms)):
                return False
    return True


def kahler_check(M: MetricLieAlgebra, J: Matrix, omega: Form) -> KahlerResult:
    n = M.dim
    if J @ J != -Matrix.identity(n):
        return KahlerResult(False, "J²=-id")
    if J.T @ M.g @ J != M.g:
        return KahlerResult(False, "g(J·,J·)=g")
    if omega != Form.from_matrix(M.g @ J):
        return KahlerResult(False, "ω=g(·,J·)")
    if not ce_d(M.L, omega).is_zero():
        return KahlerResult(False, "dω=0")
    if not complex_nijenhuis_vanishes(M.L, J):
        return KahlerResult(False, "N_J=0")
    return KahlerResult(True)


def quadratic_identity_holds(M: MetricLieAlgebra, D: Matrix, h: Fraction) -> bool:
    """[Ď^s, Ď^a] = h Ď^s - 2 (Ď^s)²."""
    Ds, Da = sym_anti_split(M, D)
    return commutator(Ds, Da) == Ds * h - (Ds @ Ds) * 2


def seed_violations(seed: KahlerSeed) -> list[str]:
    """Names of the violated seed clauses, in checking order."""
    bad = []
    if seed.tau not in (1, -1):
        bad.append("τ=±1")
    k = kahler_check(seed.M, seed.J, seed.omega)
    if not k:
        bad.append(k.failed)
    try:
        if not is_nilpotent(seed.M.L).nilpotent:
            bad.append("ǧ nilpotent")
    except NotALieAlgebra:
        bad.append("Jacobi identity")
    if not is_derivation(seed.M.L, seed.D):
        bad.append("Ď derivation")
    if not commutator(seed.J, seed.D).is_zero():
        bad.append("[J,Ď]=0")
    if not quadratic_identity_holds(seed.M, seed.D, seed.h):
        bad.append("[Ďˢ,Ďᵃ]=hĎˢ-2(Ďˢ)²")
    return bad


def check_seed(seed: KahlerSeed) -> None:
    bad = seed_violations(seed)
    if bad:
        raise SeedInvariantViolated(bad[0])


# --- construction ------------------------------------------------------------

@dataclass(frozen=True)
class Construction:
    """The Sasaki algebra built from a seed, with its distinguished vectors."""

    M: MetricLieAlgebra
    structure: AlmostContactData
    decomposition: StandardDecomposition
    b: Vector
    xi: Vector
    e0: Vector


def construct_sasaki(seed: KahlerSeed) -> Construction:
    check_seed(seed)
    m = seed.dim
    n = m + 3
    ib, ixi, ie0 = m, m + 1, m + 2
    tau, h = seed.tau, seed.h
    Ld = seed.M.L
    d_omega_D = act(seed.D, seed.omega)
    brackets = {}
    for i in range(m):
        for j in range(i + 1, m):
            v = list(Ld.basis_bracket(i, j)) + [ZERO] * 3
            v[ib] = -tau * d_omega_D.coefficient((i, j))
            v[ixi] = -2 * seed.omega.coefficient((i, j))
            if not is_zero(v):
                brackets[(i, j)] = v
    for j in range(m):
        v = list(seed.D.column(j)) + [ZERO] * 3
        if not is_zero(v):
            brackets[(ie0, j)] = v
    v = [ZERO] * n
    v[ib] = h
    v[ixi] = -2 * tau
    brackets[(ie0, ib)] = v
    L = LieAlgebra(n, brackets)
    g = block_diagonal(seed.M.g, Matrix.diagonal([tau, ONE, tau]))
    M = MetricLieAlgebra(L, g)

    phi_rows = [list(seed.J.row(i)) + [ZERO] * 3 for i in range(m)] + [[ZERO] * n for _ in range(3)]
    phi_rows[ie0][ib] = ONE    # φ(b) = e0
    phi_rows[ib][ie0] = -ONE   # φ(e0) = -b
    phi = Matrix(phi_rows, n)
    xi = unit(n, ixi)
    structure = AlmostContactData(M, phi, xi)
    dec = StandardDecomposition.from_indices(M, range(m + 2), [ie0])
    logger.debug("Constructed %d-dimensional Sasaki algebra (h=%s, tau=%s)", n, h, tau)
    return Construction(M, structure, dec, unit(n, ib), xi, unit(n, ie0))


# --- extraction --------------------------------------------------------------

@dataclass(frozen=True)
class ReductionReport:
    b: Vector
    xi: Vector
    h: Fraction
    tau: Fraction
    seed: KahlerSeed
    complement: tuple[Vector, ...]
    sasaki_quotient: AlmostContactData
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def extract_reduction(
    dec: StandardDecomposition, xi: Sequence, rank_one: RankOneReport | None = None
) -> ReductionReport:
    rank_one = rank_one or check_rank_one_sasaki(dec, xi)
    if not check_z_standard(dec, xi, rank_one):
        raise NotZStandard("Structure is not z-standard for this decomposition and Reeb vector")
    frame = IdealFrame(dec)
    Mg, D, tau = frame.g, frame.D, frame.tau
    L = Mg.L
    m = frame.m
    xi_g = frame.to_ideal(rank_one.xi)
    b_g = frame.to_ideal(rank_one.b)
    eta = flat(Mg, xi_g)
    b_flat = flat(Mg, b_g)
    d_eta = ce_d(L, eta)
    d_b = ce_d(L, b_flat)

    W = kernel(Matrix([b_flat.vector(), eta.vector()], m))
    k = len(W)
    for w in W:
        if coordinates(D @ w, W) is None:
            raise BlockFormViolation("D does not preserve ⟨b,ξ⟩⊥")
    Db = coordinates(D @ b_g, [b_g, xi_g])
    if Db is None or Db[1] != -2 * tau:
        raise BlockFormViolation("D(b) is not h b - 2τ ξ")
    h = Db[0]
    if not is_zero(D @ xi_g):
        raise BlockFormViolation("D(ξ) ≠ 0")

    Q = quotient(L, [b_g, xi_g], W)
    B = Matrix.from_columns(W, m)
    g_check = B.T @ Mg.g @ B
    D_check = Matrix.from_columns([coordinates(D @ w, W) for w in W], k)
    J_cols = []
    for w in W:
        Jw = tuple(-HALF * x for x in sharp(Mg, interior(w, d_eta)))
        J_cols.append(coordinates(Jw, W))
    if any(c is None for c in J_cols):
        raise BlockFormViolation("J does not preserve ⟨b,ξ⟩⊥")
    J = Matrix.from_columns(J_cols, k)
    omega = pullback(d_eta, W) * HALF
    seed = KahlerSeed(MetricLieAlgebra(Q, g_check), J, omega, D_check, h, tau)

    checks: dict[str, bool] = {}
    checks["kahler"] = bool(kahler_check(seed.M, J, omega))
    checks["[J,Ď]=0"] = commutator(J, D_check).is_zero()
    checks["quadratic identity"] = quadratic_identity_holds(seed.M, D_check, h)
    checks["Ďω=db♭"] = act(D_check, omega) == pullback(d_b, W)
    checks["D(dη)=2db♭"] = act(D, d_eta) == d_b * 2
    checks["b,ξ central"] = all(
        is_zero(L.bracket(v, unit(m, i))) for v in (b_g, xi_g) for i in range(m)
    )
    Ds, Da = sym_anti_split(Mg, D)
    checks["Dᵃ(dη)=0"] = act(Da, d_eta).is_zero()
    checks["dη(Dˢx,y)=dη(x,Dˢy)"] = all(
        d_eta(Ds @ unit(m, i), unit(m, j)) == d_eta(unit(m, i), Ds @ unit(m, j))
        for i in range(m) for j in range(m)
    )
    checks["bracket splitting"] = all(
        Mg.L.bracket(W[i], W[j])
        == tuple(
            a - tau * d_b(W[i], W[j]) * bb - d_eta(W[i], W[j]) * x
            for a, bb, x in zip(B @ Q.basis_bracket(i, j), b_g, xi_g)
        )
        for i in range(k) for j in range(i + 1, k)
    )

    report = ReductionReport(
        b=rank_one.b,
        xi=rank_one.xi,
        h=h,
        tau=tau,
        seed=seed,
        complement=tuple(frame.to_full(w) for w in W),
        sasaki_quotient=_sasaki_quotient(Mg, b_g, xi_g, d_eta),
        checks=checks,
    )
    if not report.ok:
        logger.warning("Reduction checks failed: %s", {k: v for k, v in checks.items() if not v})
    return report


def _sasaki_quotient(Mg: MetricLieAlgebra, b: Vector, xi: Vector, d_eta: Form) -> AlmostContactData:
    """g/⟨b⟩ on b⊥, with φ = -1/2 (x ⌟ dη)♯."""
    m = Mg.dim
    V = kernel(Matrix([flat(Mg, b).vector()], m))
    Q = quotient(Mg.L, [b], V)
    B = Matrix.from_columns(V, m)
    g = B.T @ Mg.g @ B
    phi_cols = [
        coordinates(tuple(-HALF * x for x in sharp(Mg, interior(v, d_eta))), V) for v in V
    ]
    if any(c is None for c in phi_cols):
        raise BlockFormViolation("φ does not preserve b⊥")
    return AlmostContactData(MetricLieAlgebra(Q, g), Matrix.from_columns(phi_cols, len(V)),
                             coordinates(xi, V))


# --- Kähler analogue ---------------------------------------------------------

def sasaki_central_extension(M: MetricLieAlgebra, J: Matrix, omega: Form) -> AlmostContactData:
    """Central extension by ξ with dξ♭ = 2ω, metric g + η⊗η and φ = J ⊕ 0."""
    n = M.dim
    N = n + 1
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = list(M.L.basis_bracket(i, j)) + [-2 * omega.coefficient((i, j))]
            if not is_zero(v):
                brackets[(i, j)] = v
    L = LieAlgebra(N, brackets)
    g = block_diagonal(M.g, Matrix.identity(1))
    phi = block_diagonal(J, Matrix.zeros(1))
    return AlmostContactData(MetricLieAlgebra(L, g), phi, unit(N, n))


def reduce_kahler_extension(
    M: MetricLieAlgebra, J: Matrix, omega: Form, dec: StandardDecomposition
) -> ReductionReport:
    """Reduce a rank-one pseudo-Kähler extension through its Sasaki central extension.

    dec is a rank-one standard decomposition of M; the Reeb vector is appended
    as the last basis vector and joins the ideal.
    """
    A = sasaki_central_extension(M, J, omega)
    ideal = tuple(tuple(v) + (ZERO,) for v in dec.ideal) + (A.xi,)
    abelian = tuple(tuple(v) + (ZERO,) for v in dec.abelian)
    return extract_reduction(StandardDecomposition(A.M, ideal, abelian), A.xi)


# --- seed transformations ----------------------------------------------------

def reverse_seed_sign(seed: KahlerSeed) -> KahlerSeed:
    """(ĝ, ω) -> (-ĝ, -ω)."""
    return replace(seed, M=seed.M.with_metric(-seed.M.g), omega=-seed.omega)


def flip_hermitian_sign(seed: KahlerSeed) -> KahlerSeed:
    """(ĝ, J) -> (-ĝ, -J): same ω, hence the same brackets after construction."""
    return replace(seed, M=seed.M.with_metric(-seed.M.g), J=-seed.J)


@functools.singledispatch
def reverse_metric_sign(obj, block: Sequence[Vector] | None = None):
    raise TypeError(f"Cannot reverse the metric of {type(obj).__name__}")


@reverse_metric_sign.register
def _(obj: KahlerSeed, block=None) -> KahlerSeed:
    return reverse_seed_sign(obj)


@reverse_metric_sign.register
def _(obj: AlmostContactData, block=None) -> AlmostContactData:
    if block is None:
        raise ValueError("Reversing an almost contact structure needs the block to negate")
    return reverse_contact_sign(obj, block)


def reversal_isomorphism(seed: KahlerSeed) -> Matrix:
    """construct(seed) -> construct(reverse_seed_sign(seed)): b -> -b', ξ -> -ξ', rest fixed."""
    m = seed.dim
    return Matrix.diagonal([ONE] * m + [-ONE, -ONE, ONE])


def symmetrize_D(seed: KahlerSeed) -> KahlerSeed:
    Ds, Da = sym_anti_split(seed.M, seed.D)
    if Da.is_zero():
        return seed
    if not is_derivation(seed.M.L, Ds):
        raise SymmetricPartNotDerivation("Ďˢ is not a derivation of ǧ")
    if not commutator(Ds, Da).is_zero():
        raise CommutatorNonzero("[Ďˢ,Ďᵃ] ≠ 0")
    return replace(seed, D=Ds)


def h_normalize(seed: KahlerSeed) -> tuple[KahlerSeed, Fraction]:
    """Return a seed with h in {0, 2} and the factor applied to Ď."""
    if seed.h == 0:
        return seed, ONE
    factor = Fraction(2) / seed.h
    return replace(seed, D=seed.D * factor, h=Fraction(2)), factor


def minimal_polynomial_divides(seed: KahlerSeed) -> bool:
    """h Ď - 2 Ď² = 0 for a metric-symmetric Ď."""
    Ds, Da = sym_anti_split(seed.M, seed.D)
    if not Da.is_zero():
        raise ValueError("Ď is not metric-symmetric")
    return (seed.D * seed.h - (seed.D @ seed.D) * 2).is_zero()


# --- graded construction -----------------------------------------------------

def _direct_sum_form(a: Form, b: Form) -> Form:
    n = a.dim + b.dim
    coeffs = {idx: c for idx, c in a.items()}
    coeffs.update({tuple(i + a.dim for i in idx): c for idx, c in b.items()})
    return Form(n, a.degree, coeffs)


def graded_seed(
    M0: MetricLieAlgebra,
    J0: Matrix,
    omega0: Form,
    M1: MetricLieAlgebra,
    J1: Matrix,
    omega1: Form,
    rho: Sequence[Matrix],
    h,
    tau,
) -> KahlerSeed:
    """ǧ0 ⋉_ρ ǧ1 with Ď = (h/2) π1; rho[i] is ρ of the i-th basis vector of ǧ0."""
    h, tau = to_scalar(h), to_scalar(tau)
    m0, m1 = M0.dim, M1.dim
    if not M1.L.is_abelian():
        raise RepresentationConditionViolated("ǧ1 must be abelian")
    if len(rho) != m0:
        raise RepresentationConditionViolated(f"ρ needs {m0} matrices, got {len(rho)}")

    def rho_of(x):
        out = Matrix.zeros(m1)
        for i, xi in enumerate(x):
            if xi:
                out = out + rho[i] * xi
        return out

    for i in range(m0):
        for j in range(i + 1, m0):
            if rho_of(M0.L.basis_bracket(i, j)) != commutator(rho[i], rho[j]):
                raise RepresentationConditionViolated("ρ is not a representation")
    for i in range(m0):
        if not act(rho[i], omega1).is_zero():
            raise RepresentationConditionViolated("ρ(X)ω1 ≠ 0")
        compat = commutator(J1, rho[i]) + commutator(rho_of(J0.column(i)), J1) @ J1
        if not compat.is_zero():
            raise RepresentationConditionViolated("[J1,ρ(X)]+[ρ(J0X),J1]J1 ≠ 0")

    n = m0 + m1
    brackets = {}
    for i in range(m0):
        for j in range(i + 1, m0):
            v = list(M0.L.basis_bracket(i, j)) + [ZERO] * m1
            if not is_zero(v):
                brackets[(i, j)] = v
        for j in range(m1):
            v = [ZERO] * m0 + list(rho[i].column(j))
            if not is_zero(v):
                brackets[(i, m0 + j)] = v
    L = LieAlgebra(n, brackets)
    M = MetricLieAlgebra(L, block_diagonal(M0.g, M1.g))
    D = block_diagonal(Matrix.zeros(m0), Matrix.identity(m1) * (h / 2))
    return KahlerSeed(M, block_diagonal(J0, J1), _direct_sum_form(omega0, omega1), D, h, tau)


def graded_construct(M0, J0, omega0, M1, J1, omega1, rho, h, tau) -> Construction:
    return construct_sasaki(graded_seed(M0, J0, omega0, M1, J1, omega1, rho, h, tau))
