"""
Almost contact metric structures on metric Lie algebras and the Sasaki test.

A structure is (φ, ξ, η, g) with η = ξ♭, g(ξ, ξ) = 1 and
    φ² = -id + η ⊗ ξ,    g(φX, φY) = g(X, Y) - η(X) η(Y).
It is Sasaki when it is normal (N_φ + dη ⊗ ξ = 0) and contact (dη = 2Φ),
equivalently when (∇_X φ) Y = g(X, Y) ξ - η(Y) X. check_sasaki evaluates
both routes and refuses to answer if they disagree.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from exact_linalg import (
    Matrix,
    Vector,
    commutator,
    contains,
    coordinates,
    is_zero,
    kernel,
    inverse,
    to_scalar,
    unit,
)
from lie_algebra import Form, ce_d, center, pullback, quotient
from metric_geometry import (
    Connection,
    CurvatureData,
    MetricLieAlgebra,
    curvature,
    flat,
    levi_civita,
)
from sasaki_errors import CharacterizationMismatch, NonPositiveParameter, NotAnIdeal

logger = logging.getLogger(__name__)


class AlmostContactData:
    """(φ, ξ, η) on a metric Lie algebra; η defaults to ξ♭."""

    __slots__ = ("M", "phi", "xi", "eta")

    def __init__(self, M: MetricLieAlgebra, phi: Matrix, xi: Sequence, eta: Form | None = None):
        self.M = M
        self.phi = phi
        self.xi: Vector = tuple(to_scalar(x) for x in xi)
        self.eta = eta if eta is not None else flat(M, self.xi)

    @property
    def dim(self) -> int:
        return self.M.dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlmostContactData)
            and self.M == other.M
            and self.phi == other.phi
            and self.xi == other.xi
            and self.eta == other.eta
        )

    def __repr__(self) -> str:
        return f"AlmostContactData(dim={self.dim}, xi={[str(x) for x in self.xi]})"


@dataclass(frozen=True)
class AcmsResult:
    ok: bool
    failed: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _eta_xi(A: AlmostContactData) -> Matrix:
    """The endomorphism X -> η(X) ξ."""
    return Matrix.outer(A.xi, A.eta.vector())


def check_acms(A: AlmostContactData) -> AcmsResult:
    M, phi, xi = A.M, A.phi, A.xi
    n = M.dim
    eta = A.eta.vector()
    if phi.rows != n or phi.cols != n or len(xi) != n:
        return AcmsResult(False, "shapes")
    if M.inner(xi, xi) != 1:
        return AcmsResult(False, "g(ξ,ξ)=1")
    if eta != M.g @ xi:
        return AcmsResult(False, "η=ξ♭")
    if sum(a * b for a, b in zip(eta, xi)) != 1:
        return AcmsResult(False, "η(ξ)=1")
    if not is_zero(phi.T @ eta):
        return AcmsResult(False, "η∘φ=0")
    if phi @ phi != _eta_xi(A) - Matrix.identity(n):
        return AcmsResult(False, "φ²=-id+η⊗ξ")
    if phi.T @ M.g @ phi != M.g - Matrix.outer(eta, eta):
        return AcmsResult(False, "g(φX,φY)=g(X,Y)-η(X)η(Y)")
    gp = M.g @ phi
    if gp != -gp.T:
        return AcmsResult(False, "φ metric-antisymmetric")
    return AcmsResult(True)


def fundamental_form(A: AlmostContactData) -> Form:
    """Φ(X, Y) = g(X, φY)."""
    return Form.from_matrix(A.M.g @ A.phi)


def phi_from_fundamental_form(M: MetricLieAlgebra, Phi: Form) -> Matrix:
    """The φ with Φ = g(·, φ·)."""
    return M.g_inv @ Phi.matrix()


def nijenhuis(A: AlmostContactData) -> dict[tuple[int, int], Vector]:
    """N_φ(e_i, e_j) for i < j."""
    L, phi = A.M.L, A.phi
    n = A.dim
    phi2 = phi @ phi
    cols = phi.columns()
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            ei, ej = unit(n, i), unit(n, j)
            terms = (
                phi2 @ L.basis_bracket(i, j),
                L.bracket(cols[i], cols[j]),
                phi @ L.bracket(cols[i], ej),
                phi @ L.bracket(ei, cols[j]),
            )
            out[(i, j)] = tuple(a + b - c - d for a, b, c, d in zip(*terms))
    return out


def check_normal(A: AlmostContactData) -> bool:
    d_eta = ce_d(A.M.L, A.eta)
    for (i, j), v in nijenhuis(A).items():
        c = d_eta.coefficient((i, j))
        if not is_zero(a + c * x for a, x in zip(v, A.xi)):
            return False
    return True


def check_contact(A: AlmostContactData) -> bool:
    return ce_d(A.M.L, A.eta) == fundamental_form(A) * 2


def nabla_phi_identity(A: AlmostContactData, C: Connection | None = None) -> bool:
    """(∇_X φ) Y = g(X, Y) ξ - η(Y) X on all basis pairs."""
    C = C or levi_civita(A.M)
    n = A.dim
    eta = A.eta.vector()
    for i in range(n):
        lhs = commutator(C.nabla(i), A.phi)
        rhs = Matrix.outer(A.xi, A.M.g.row(i)) - Matrix.outer(unit(n, i), eta)
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class ReebConsequences:
    """Identities every Sasaki structure satisfies."""

    nabla_xi: bool           # ∇_X ξ = -φX
    killing: bool            # ξ is Killing
    contact: bool            # dη = 2Φ
    curvature_xi: bool       # R(X, Y) ξ = η(Y) X - η(X) Y
    ricci_xi: bool           # ric(ξ, X) = 2n η(X)

    @property
    def ok(self) -> bool:
        return all(asdict(self).values())


def reeb_consequences(A: AlmostContactData, C: Connection, curv: CurvatureData) -> ReebConsequences:
    n = A.dim
    xi = A.xi
    eta = A.eta.vector()
    g = A.M.g
    nabla_xi_cols = [C.nabla(i) @ xi for i in range(n)]
    nabla_xi = all(
        col == tuple(-x for x in A.phi.column(i)) for i, col in enumerate(nabla_xi_cols)
    )
    k = g @ Matrix.from_columns(nabla_xi_cols, n)
    killing = (k + k.T).is_zero()
    curvature_xi = all(
        curv.apply(unit(n, i), unit(n, j), xi)
        == tuple(eta[j] * a - eta[i] * b for a, b in zip(unit(n, i), unit(n, j)))
        for i in range(n)
        for j in range(i + 1, n)
    )
    ricci_xi = curv.ric @ xi == tuple((n - 1) * e for e in eta)
    return ReebConsequences(
        nabla_xi=nabla_xi,
        killing=killing,
        contact=check_contact(A),
        curvature_xi=curvature_xi,
        ricci_xi=ricci_xi,
    )


@dataclass(frozen=True)
class SasakiReport:
    is_acms: bool
    acms_failure: str | None
    normal: bool
    contact: bool
    nabla_phi_identity: bool
    consequences: ReebConsequences | None
    center_in_reeb_line: bool
    verdict: bool

    @property
    def definition_route(self) -> bool:
        return self.is_acms and self.normal and self.contact

    def to_dict(self) -> dict:
        return asdict(self)


def check_sasaki(A: AlmostContactData) -> SasakiReport:
    acms = check_acms(A)
    in_line = contains([A.xi], center(A.M.L))
    if not acms:
        logger.debug("Not an almost contact metric structure: %s", acms.failed)
        return SasakiReport(False, acms.failed, False, False, False, None, in_line, False)
    C = levi_civita(A.M)
    normal = check_normal(A)
    contact = check_contact(A)
    nabla = nabla_phi_identity(A, C)
    if (normal and contact) != nabla:
        raise CharacterizationMismatch(
            f"normal={normal}, contact={contact} but nabla-phi identity={nabla}"
        )
    consequences = reeb_consequences(A, C, curvature(A.M, C)) if nabla else None
    return SasakiReport(True, None, normal, contact, nabla, consequences, in_line, nabla)


def d_homothety(A: AlmostContactData, a) -> AlmostContactData:
    """φ̂ = φ, ξ̂ = ξ/a, η̂ = aη, ĝ = a g + (a² - a) η ⊗ η."""
    a = to_scalar(a)
    if a <= 0:
        raise NonPositiveParameter(f"D-homothety needs a > 0, got {a}")
    eta = A.eta.vector()
    g = A.M.g * a + Matrix.outer(eta, eta) * (a * a - a)
    M = A.M.with_metric(g)
    return AlmostContactData(M, A.phi, tuple(x / a for x in A.xi))


def orthogonal_projection(M: MetricLieAlgebra, basis: Sequence[Vector]) -> Matrix:
    """Projection onto span(basis) along its g-orthogonal complement."""
    B = Matrix.from_columns(basis, M.dim)
    gram = B.T @ M.g @ B
    return B @ inverse(gram) @ B.T @ M.g


def reverse_metric_sign(A: AlmostContactData, block: Sequence[Vector]) -> AlmostContactData:
    """Negate g and φ on the φ-invariant nondegenerate subspace spanned by block.

    Φ and η are unchanged, so the Sasaki property is preserved whenever the
    brackets only see the block through Φ.
    """
    P = orthogonal_projection(A.M, block)
    g = A.M.g - P.T @ A.M.g @ P * 2
    phi = A.phi - A.phi @ P * 2
    return AlmostContactData(A.M.with_metric(g), phi, A.xi)


def kahler_quotient(A: AlmostContactData) -> tuple[MetricLieAlgebra, Matrix, Form, list[Vector]]:
    """Quotient by the central Reeb line, with J = φ and ω = Φ on ξ⊥.

    Returns the metric quotient, J, ω and the basis of ξ⊥ used as coordinates.
    """
    L = A.M.L
    if not all(is_zero(col) for col in L.ad(A.xi).columns()):
        raise NotAnIdeal("ξ is not central; the Reeb line cannot be quotiented out")
    complement = kernel(Matrix([A.eta.vector()], A.dim))
    Q = quotient(L, [A.xi], complement)
    B = Matrix.from_columns(complement, A.dim)
    g = B.T @ A.M.g @ B
    J_cols = [coordinates(A.phi @ v, complement) for v in complement]
    J = Matrix.from_columns(J_cols, len(complement))
    omega = pullback(fundamental_form(A), complement)
    return MetricLieAlgebra(Q, g), J, omega, complement
