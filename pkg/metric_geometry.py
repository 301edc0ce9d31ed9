"""
Metrics on Lie algebras: musical maps, metric adjoints, the Levi-Civita
connection of a left-invariant metric, curvature and covariant derivatives
of 2-forms.

The Levi-Civita connection is
    ∇_w v = -ad(v)^s w - 1/2 (ad w)* v
and Ricci is ric(X, Y) = tr(Z -> R(Z, X) Y), with
    R(X, Y) = [∇_X, ∇_Y] - ∇_[X,Y].
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from exact_linalg import (
    ZERO,
    Matrix,
    Signature,
    Vector,
    commutator,
    congruence_signature,
    dot,
    inverse,
    is_zero,
    to_scalar,
    unit,
)
from lie_algebra import Form, LieAlgebra, act
from sasaki_errors import CharacterizationMismatch, DegenerateMetric

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class MetricLieAlgebra:
    """A Lie algebra with a nondegenerate symmetric bilinear form g."""

    __slots__ = ("L", "g", "g_inv", "signature")

    def __init__(self, L: LieAlgebra, g: Matrix):
        if g.rows != L.dim or g.cols != L.dim:
            raise ValueError(f"Metric is {g.rows}x{g.cols}, algebra has dimension {L.dim}")
        sig = congruence_signature(g)
        if not sig.nondegenerate:
            raise DegenerateMetric(f"Metric has {sig.zero} null directions")
        self.L = L
        self.g = g
        self.g_inv = inverse(g)
        self.signature: Signature = sig

    @property
    def dim(self) -> int:
        return self.L.dim

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return dot(u, self.g @ v)

    def with_metric(self, g: Matrix) -> "MetricLieAlgebra":
        return MetricLieAlgebra(self.L, g)

    def __eq__(self, other) -> bool:
        return isinstance(other, MetricLieAlgebra) and self.L == other.L and self.g == other.g

    def __hash__(self) -> int:
        return hash((self.L, self.g))

    def __repr__(self) -> str:
        s = self.signature
        return f"MetricLieAlgebra(dim={self.dim}, signature=({s.plus},{s.minus}))"


def flat(M: MetricLieAlgebra, v: Sequence[Fraction]) -> Form:
    return Form.covector(M.g @ v)


def sharp(M: MetricLieAlgebra, alpha: Form | Sequence[Fraction]) -> Vector:
    coeffs = alpha.vector() if isinstance(alpha, Form) else tuple(to_scalar(x) for x in alpha)
    return M.g_inv @ coeffs


def adjoint(M: MetricLieAlgebra, f: Matrix) -> Matrix:
    """f* with g(f* u, v) = g(u, f v)."""
    return M.g_inv @ f.T @ M.g


def ad_star(M: MetricLieAlgebra, w: Sequence[Fraction]) -> Matrix:
    return adjoint(M, M.L.ad(w))


def sym_anti_split(M: MetricLieAlgebra, f: Matrix) -> tuple[Matrix, Matrix]:
    fs = adjoint(M, f)
    return (f + fs) * HALF, (f - fs) * HALF


def symmetric_part(M: MetricLieAlgebra, f: Matrix) -> Matrix:
    return sym_anti_split(M, f)[0]


def is_metric_symmetric(M: MetricLieAlgebra, f: Matrix) -> bool:
    return adjoint(M, f) == f


def is_metric_antisymmetric(M: MetricLieAlgebra, f: Matrix) -> bool:
    return adjoint(M, f) == -f


def form_adjoint_action(M: MetricLieAlgebra, x: Sequence[Fraction], alpha: Form) -> Form:
    """(ad x)* acting on alpha as a derivation."""
    return act(ad_star(M, x), alpha)


# --- connection --------------------------------------------------------------

class Connection:
    """Left-invariant connection; nabla(i) is the matrix of v -> ∇_{e_i} v."""

    __slots__ = ("dim", "_nabla")

    def __init__(self, nabla: Sequence[Matrix]):
        self.dim = len(nabla)
        self._nabla = tuple(nabla)

    def nabla(self, i: int) -> Matrix:
        return self._nabla[i]

    def matrix(self, x: Sequence[Fraction]) -> Matrix:
        out = Matrix.zeros(self.dim)
        for i, xi in enumerate(x):
            if xi:
                out = out + self._nabla[i] * xi
        return out

    def covariant(self, x: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        return self.matrix(x) @ v

    def christoffel(self, i: int, j: int, k: int) -> Fraction:
        """Γ^k_ij with ∇_{e_i} e_j = sum_k Γ^k_ij e_k."""
        return self._nabla[i][k, j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Connection) and self._nabla == other._nabla

    def __hash__(self) -> int:
        return hash(self._nabla)


def levi_civita(M: MetricLieAlgebra) -> Connection:
    n = M.dim
    ad_sym = [symmetric_part(M, M.L.ad_basis(j)) for j in range(n)]
    nabla = []
    for i in range(n):
        w = unit(n, i)
        half_star = ad_star(M, w) * HALF
        columns = []
        for j in range(n):
            a = ad_sym[j] @ w
            b = half_star.column(j)
            columns.append(tuple(-x - y for x, y in zip(a, b)))
        nabla.append(Matrix.from_columns(columns, n))
    return Connection(nabla)


# --- curvature ---------------------------------------------------------------

@dataclass(frozen=True)
class CurvatureData:
    """R[i][j] is the matrix of Z -> R(e_i, e_j) Z; ric is the Ricci matrix."""

    R: tuple[tuple[Matrix, ...], ...]
    ric: Matrix

    def endomorphism(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Matrix:
        n = self.ric.rows
        out = Matrix.zeros(n)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out = out + self.R[i][j] * (xi * yj)
        return out

    def apply(self, x, y, z) -> Vector:
        return self.endomorphism(x, y) @ z


def curvature(M: MetricLieAlgebra, C: Connection) -> CurvatureData:
    n = M.dim
    R = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                row.append(-R[j][i])
                continue
            row.append(commutator(C.nabla(i), C.nabla(j)) - C.matrix(M.L.basis_bracket(i, j)))
        R.append(row)
    R = tuple(tuple(r) for r in R)
    ric = Matrix([[sum((R[k][a][k, b] for k in range(n)), ZERO) for b in range(n)] for a in range(n)], n)
    return CurvatureData(R, ric)


def ricci_via_metric(M: MetricLieAlgebra, curv: CurvatureData) -> Matrix:
    """ric(X, Y) = sum g^{kl} g(R(e_k, X) Y, e_l), a contraction of the (0,4) tensor."""
    n = M.dim
    out = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            total = ZERO
            for k in range(n):
                lowered = M.g @ curv.R[k][a].column(b)
                for l in range(n):
                    if M.g_inv[k, l]:
                        total += M.g_inv[k, l] * lowered[l]
            out[a][b] = total
    return Matrix(out, n)


# --- self-checks -------------------------------------------------------------

@dataclass(frozen=True)
class ConnectionCheck:
    metric_compatible: bool
    torsion_free: bool
    bianchi: bool
    ricci_symmetric: bool
    ricci_routes_agree: bool

    @property
    def ok(self) -> bool:
        return all((self.metric_compatible, self.torsion_free, self.bianchi,
                    self.ricci_symmetric, self.ricci_routes_agree))


def check_connection(M: MetricLieAlgebra, C: Connection | None = None) -> ConnectionCheck:
    C = C or levi_civita(M)
    n = M.dim
    compatible = True
    for i in range(n):
        gn = M.g @ C.nabla(i)
        if not (gn + gn.T).is_zero():
            compatible = False
            break
    torsion_free = all(
        tuple(a - b for a, b in zip(C.nabla(i).column(j), C.nabla(j).column(i))) == M.L.basis_bracket(i, j)
        for i in range(n)
        for j in range(i + 1, n)
    )
    curv = curvature(M, C)
    bianchi = True
    for i, j, k in itertools.combinations(range(n), 3):
        s = [a + b + c for a, b, c in zip(
            curv.R[i][j].column(k), curv.R[j][k].column(i), curv.R[k][i].column(j))]
        if not is_zero(s):
            bianchi = False
            break
    result = ConnectionCheck(
        metric_compatible=compatible,
        torsion_free=torsion_free,
        bianchi=bianchi,
        ricci_symmetric=curv.ric.is_symmetric(),
        ricci_routes_agree=ricci_via_metric(M, curv) == curv.ric,
    )
    if not result.ok:
        logger.warning("Connection self-check failed: %s", result)
    return result


def standard_connection_formulas(
    M: MetricLieAlgebra,
    C: Connection,
    ideal: Sequence[Vector],
    abelian: Sequence[Vector],
) -> bool:
    """∇_H X = ad(H)^a X and ∇_X H = -ad(H)^s X for H in the abelian factor."""
    for H in abelian:
        hs, ha = sym_anti_split(M, M.L.ad(H))
        for X in ideal:
            if C.covariant(H, X) != ha @ X:
                return False
            if C.covariant(X, H) != tuple(-x for x in hs @ X):
                return False
    return True


# --- 2-forms -----------------------------------------------------------------

def alpha_form(M: MetricLieAlgebra, phi: Form, x: Sequence[Fraction]) -> Form:
    """α^Φ_x(u, w) = Φ((ad u)* x, w) - Φ((ad w)* x, u)."""
    n = M.dim
    x = tuple(x)
    images = [ad_star(M, unit(n, i)) @ x for i in range(n)]
    coeffs = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = phi(images[i], unit(n, j)) - phi(images[j], unit(n, i))
            if c:
                coeffs[(i, j)] = c
    return Form(n, 2, coeffs)


def nabla_two_form(M: MetricLieAlgebra, C: Connection, phi: Form, x: Sequence[Fraction]) -> Form:
    """(∇_x Φ)(u, w) = -Φ(∇_x u, w) - Φ(u, ∇_x w), cross-checked against the bracket expansion."""
    if phi.degree != 2:
        raise ValueError("nabla_two_form needs a 2-form")
    direct = act(C.matrix(x), phi)
    expanded = nabla_two_form_decomposed(M, phi, x)
    if direct != expanded:
        raise CharacterizationMismatch(
            "∇_x Φ from the connection differs from 1/2 L_x Φ - 1/2 (ad x)* Φ + 1/2 α^Φ_x"
        )
    return direct


def nabla_two_form_decomposed(M: MetricLieAlgebra, phi: Form, x: Sequence[Fraction]) -> Form:
    """∇_x Φ = 1/2 L_x Φ - 1/2 (ad x)* Φ + 1/2 α^Φ_x."""
    lie = act(M.L.ad(x), phi)
    star = form_adjoint_action(M, x, phi)
    return (lie - star + alpha_form(M, phi, x)) * HALF
