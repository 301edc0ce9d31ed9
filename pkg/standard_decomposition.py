"""
Standard decompositions g̃ = g ⋊ a of metric Lie algebras.

A standard decomposition is orthogonal, with g a nilpotent ideal and a an
abelian subalgebra; it is pseudo-Iwasawa when every ad X, X in a, is
metric-symmetric. For rank one (a = ⟨e0⟩, τ = g̃(e0, e0) = ±1) the Sasaki
structures with Reeb vector ξ in g are characterised by equations on
D = ad e0|_g and b = D^a ξ; this module checks them, emits the resulting φ
and searches for z-standard witnesses.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from exact_linalg import (
    ZERO,
    Matrix,
    Vector,
    commutator,
    coordinates,
    independent_subset,
    inverse,
    is_zero,
    to_scalar,
    unit,
)
from lie_algebra import (
    LieAlgebra,
    act,
    bracket_span,
    ce_d,
    centralizer,
    centralizer_of,
    full_space,
    interior,
    is_derivation,
    is_ideal,
    subalgebra,
    subspace_is_nilpotent,
    wedge,
)
from metric_geometry import (
    MetricLieAlgebra,
    adjoint,
    alpha_form,
    flat,
    form_adjoint_action,
    levi_civita,
    nabla_two_form,
    sym_anti_split,
)
from contact_metric import AlmostContactData, check_acms, nabla_phi_identity
from sasaki_errors import (
    CharacterizationMismatch,
    CommutatorNonzero,
    NotADerivation,
    NotAbelian,
    NotAnIdeal,
    NotNilpotent,
    NotOrthogonal,
    RankNotOne,
    SymmetricPartMismatch,
    XiNotUnit,
)

logger = logging.getLogger(__name__)

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class StandardDecomposition:
    """Ideal and abelian factor of g̃, both given by bases in g̃ coordinates."""

    M: MetricLieAlgebra
    ideal: tuple[Vector, ...]
    abelian: tuple[Vector, ...]

    @classmethod
    def from_indices(cls, M: MetricLieAlgebra, ideal: Sequence[int], abelian: Sequence[int]):
        """Convenience constructor from 0-based basis indices."""
        n = M.dim
        return cls(M, tuple(unit(n, i) for i in ideal), tuple(unit(n, i) for i in abelian))

    @property
    def rank(self) -> int:
        return len(self.abelian)

    @property
    def e0(self) -> Vector:
        if self.rank != 1:
            raise RankNotOne(f"Decomposition has rank {self.rank}")
        return self.abelian[0]

    @property
    def tau(self) -> Fraction:
        return self.M.inner(self.e0, self.e0)


def check_standard(dec: StandardDecomposition) -> bool:
    """Raise the violated clause, return True otherwise."""
    M = dec.M
    L = M.L
    ideal, abelian = list(dec.ideal), list(dec.abelian)
    if len(independent_subset(ideal + abelian, M.dim)) != M.dim or len(ideal) + len(abelian) != M.dim:
        raise NotOrthogonal("Ideal and abelian factor do not form a direct sum equal to the algebra")
    for u in ideal:
        for h in abelian:
            if M.inner(u, h) != 0:
                raise NotOrthogonal("Ideal and abelian factor are not orthogonal")
    if not is_ideal(L, ideal):
        raise NotAnIdeal("First factor is not an ideal")
    if not all(is_zero(L.bracket(a, b)) for a in abelian for b in abelian):
        raise NotAbelian("Second factor is not an abelian subalgebra")
    if not subspace_is_nilpotent(L, ideal):
        raise NotNilpotent("Ideal factor is not nilpotent")
    return True


def ad_is_symmetric_on_factor(dec: StandardDecomposition) -> bool:
    return all(sym_anti_split(dec.M, dec.M.L.ad(h))[1].is_zero() for h in dec.abelian)


def check_pseudo_iwasawa(dec: StandardDecomposition) -> bool:
    check_standard(dec)
    return ad_is_symmetric_on_factor(dec)


def no_pseudo_iwasawa_audit(A: AlmostContactData, dec: StandardDecomposition) -> bool:
    """True when dec, on the algebra carrying the Sasaki structure A, is not pseudo-Iwasawa."""
    if A.M.L != dec.M.L:
        raise ValueError("Structure and decomposition live on different algebras")
    return not ad_is_symmetric_on_factor(dec)


# --- rank one ----------------------------------------------------------------

class IdealFrame:
    """Coordinates adapted to a rank-one decomposition: ideal basis, then e0."""

    def __init__(self, dec: StandardDecomposition):
        check_standard(dec)
        M = dec.M
        e0 = dec.e0
        tau = dec.tau
        if tau not in (1, -1):
            raise NotOrthogonal(f"e0 must satisfy g(e0,e0) = ±1, got {tau}")
        self.dec = dec
        self.n = M.dim
        self.basis = list(dec.ideal)
        self.e0 = e0
        self.tau = tau
        B = Matrix.from_columns(self.basis, self.n)
        self.B = B
        self.P = Matrix.from_columns(self.basis + [e0], self.n)
        self.P_inv = inverse(self.P)
        self.g = MetricLieAlgebra(subalgebra(M.L, self.basis), B.T @ M.g @ B)
        self.D = Matrix.from_columns(
            [coordinates(M.L.bracket(e0, v), self.basis) for v in self.basis], len(self.basis)
        )

    @property
    def m(self) -> int:
        return len(self.basis)

    def to_full(self, v: Sequence[Fraction]) -> Vector:
        return self.B @ v

    def to_ideal(self, v: Sequence[Fraction]) -> Vector | None:
        return coordinates(v, self.basis)

    def from_adapted(self, f: Matrix) -> Matrix:
        """Endomorphism given on (ideal basis, e0) written in the standard basis."""
        return self.P @ f @ self.P_inv


@dataclass(frozen=True)
class RankOneReport:
    """Outcome of the rank-one Sasaki equations for a given Reeb vector."""

    xi: Vector
    b: Vector
    tau: Fraction
    D: Matrix
    equations: dict[str, bool] = field(default_factory=dict)
    structure: AlmostContactData | None = None
    sasaki_verdict: bool = False

    @property
    def ok(self) -> bool:
        return all(self.equations.values())


def emit_phi(frame: IdealFrame, xi: Vector, b: Vector) -> Matrix:
    """φ(w) = 1/2 (ad w)* ξ + τ g(b, w) e0 on g, φ(e0) = -b, in standard coordinates."""
    Mg = frame.g
    m = frame.m
    cols = []
    for k in range(m):
        w = unit(m, k)
        v = tuple(HALF * x for x in adjoint(Mg, Mg.L.ad(w)) @ xi)
        cols.append(v + (frame.tau * Mg.inner(b, w),))
    cols.append(tuple(-x for x in b) + (ZERO,))
    return frame.from_adapted(Matrix.from_columns(cols, m + 1))


def check_rank_one_sasaki(dec: StandardDecomposition, xi: Sequence) -> RankOneReport:
    frame = IdealFrame(dec)
    xi_full = tuple(to_scalar(x) for x in xi)
    xi_g = frame.to_ideal(xi_full)
    if xi_g is None:
        raise XiNotUnit("ξ does not lie in the ideal")
    Mg, D, tau = frame.g, frame.D, frame.tau
    L = Mg.L
    m = frame.m
    if Mg.inner(xi_g, xi_g) != 1:
        raise XiNotUnit(f"g(ξ,ξ) = {Mg.inner(xi_g, xi_g)}, expected 1")
    Ds, Da = sym_anti_split(Mg, D)
    b = Da @ xi_g
    eta = flat(Mg, xi_g)
    d_eta = ce_d(L, eta)
    b_flat = flat(Mg, b)
    d_b = ce_d(L, b_flat)
    C = levi_civita(Mg)
    basis = [unit(m, k) for k in range(m)]

    eq: dict[str, bool] = {}
    eq["D(xi)=0"] = is_zero(D @ xi_g)
    eq["(ad xi)^s=0"] = sym_anti_split(Mg, L.ad(xi_g))[0].is_zero()
    eq["(ad b)*(xi)=0"] = is_zero(adjoint(Mg, L.ad(b)) @ xi_g)
    eq["D^a(d eta)=0"] = act(Da, d_eta).is_zero()
    eq["D^a(b)=-tau xi"] = Da @ b == tuple(-tau * x for x in xi_g)

    etax = restated_etax = sasaki_b = restated_b = True
    for x in basis:
        x_flat = flat(Mg, x)
        lhs = wedge(eta, x_flat)
        tail = wedge(b_flat, flat(Mg, Ds @ x)) * tau
        rhs = (
            alpha_form(Mg, d_eta, x) * QUARTER
            - form_adjoint_action(Mg, x, d_eta) * QUARTER
            + ce_d(L, act(L.ad(x), eta)) * QUARTER
            + tail
        )
        etax = etax and lhs == rhs
        restated_etax = restated_etax and lhs == nabla_two_form(Mg, C, d_eta, x) * HALF + tail
        total = (
            interior(Ds @ x, d_eta)
            + interior(x, d_b)
            + interior(b, ce_d(L, x_flat))
            + flat(Mg, L.bracket(x, b))
        )
        sasaki_b = sasaki_b and total.is_zero()
        restated_b = restated_b and interior(Ds @ x, d_eta) == flat(Mg, C.covariant(x, b))
    eq["eta^x = sasaki eta-x equation"] = etax
    eq["eta^x restated via nabla"] = restated_etax
    eq["b equation"] = sasaki_b
    eq["b equation restated via nabla"] = restated_b
    eq["g(b,b)=tau"] = Mg.inner(b, b) == tau
    eq["g(b,xi)=0"] = Mg.inner(b, xi_g) == 0

    phi = emit_phi(frame, xi_g, b)
    structure = AlmostContactData(dec.M, phi, xi_full)
    eq["compatible metric"] = bool(check_acms(structure))
    verdict = eq["compatible metric"] and nabla_phi_identity(structure)
    report = RankOneReport(
        xi=xi_full,
        b=frame.to_full(b),
        tau=tau,
        D=D,
        equations=eq,
        structure=structure,
        sasaki_verdict=verdict,
    )
    if report.ok != verdict:
        raise CharacterizationMismatch(
            f"Rank-one equations give {report.ok}, Sasaki test gives {verdict}: {eq}"
        )
    logger.debug("Rank-one equations for xi=%s: %s", [str(x) for x in xi_full], eq)
    return report


def check_z_standard(
    dec: StandardDecomposition, xi: Sequence, report: RankOneReport | None = None
) -> bool:
    """b = -φ(e0) is central in the ideal."""
    report = report or check_rank_one_sasaki(dec, xi)
    if not report.ok:
        return False
    L = dec.M.L
    return all(is_zero(L.bracket(report.b, v)) for v in dec.ideal)


# --- scans -------------------------------------------------------------------

def _height_values(height: int) -> list[Fraction]:
    values = {Fraction(p, q) for q in range(1, height + 1) for p in range(1, height + 1)}
    ordered = sorted(values)
    return ordered + [-v for v in ordered]


def candidate_vectors(pool: Sequence[Vector], n: int, height: int, terms: int) -> list[Vector]:
    """Combinations of at most `terms` pool vectors with coefficients of bounded height, up to scaling."""
    seen = set()
    out = []
    values = _height_values(height)
    for k in range(1, terms + 1):
        for subset in itertools.combinations(pool, k):
            # the first coefficient is fixed to 1 since candidates are taken up to scaling
            for coeffs in itertools.product(values, repeat=k - 1):
                v = list(subset[0])
                for c, w in zip(coeffs, subset[1:]):
                    v = [a + c * x for a, x in zip(v, w)]
                if is_zero(v):
                    continue
                lead = next(x for x in v if x)
                key = tuple(x / lead for x in v)
                if key not in seen:
                    seen.add(key)
                    out.append(tuple(v))
    return out


def is_z_witness(M: MetricLieAlgebra, X: Sequence[Fraction]) -> bool:
    """X non-null and its centralizer a nilpotent ideal of codimension one."""
    X = tuple(X)
    if is_zero(X) or M.inner(X, X) == 0:
        return False
    z = centralizer(M.L, X)
    if len(z) != M.dim - 1:
        return False
    return is_ideal(M.L, z) and subspace_is_nilpotent(M.L, z)


def scan_z_standard(M: MetricLieAlgebra, height: int = 3, terms: int = 2) -> list[Vector]:
    n = M.dim
    derived = bracket_span(M.L, full_space(n), full_space(n))
    pool = centralizer_of(M.L, derived)
    candidates = candidate_vectors(full_space(n), n, 1, 1)
    extra = candidate_vectors(pool, n, height, terms)
    keys = set()
    ordered = []
    for v in candidates + extra:
        lead = next(x for x in v if x)
        key = tuple(x / lead for x in v)
        if key not in keys:
            keys.add(key)
            ordered.append(v)
    witnesses = [X for X in ordered if is_z_witness(M, X)]
    logger.debug("z-standard scan: %d candidates, %d witnesses", len(ordered), len(witnesses))
    return witnesses


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def solve_xi(dec: StandardDecomposition, height: int = 3, terms: int = 2) -> list[Vector]:
    """Unit Reeb candidates among basis and bounded combinations in the center of the ideal."""
    frame = IdealFrame(dec)
    Mg = frame.g
    m = frame.m
    pool = centralizer_of(Mg.L, full_space(m))
    found = []
    for v in candidate_vectors(full_space(m), m, 1, 1) + candidate_vectors(pool, m, height, terms):
        root = _rational_sqrt(Mg.inner(v, v))
        if not root:
            continue
        for sign in (1, -1):
            xi = frame.to_full(tuple(sign * x / root for x in v))
            if xi in found:
                continue
            if check_rank_one_sasaki(dec, xi).ok:
                found.append(xi)
    return found


# --- isometrization ----------------------------------------------------------

def _check_split(dec: StandardDecomposition) -> None:
    """g̃ = g ⋊ a with g an ideal and a abelian; orthogonality is not required."""
    M = dec.M
    ideal, abelian = list(dec.ideal), list(dec.abelian)
    if len(ideal) + len(abelian) != M.dim or len(independent_subset(ideal + abelian, M.dim)) != M.dim:
        raise NotOrthogonal("Ideal and abelian factor do not form a direct sum equal to the algebra")
    if not is_ideal(M.L, ideal):
        raise NotAnIdeal("First factor is not an ideal")
    if not all(is_zero(M.L.bracket(a, b)) for a in abelian for b in abelian):
        raise NotAbelian("Second factor is not an abelian subalgebra")


def _extend_by_zero(dec: StandardDecomposition, f: Matrix) -> Matrix:
    """Endomorphism of the ideal (ideal coordinates) extended by zero on a."""
    ideal, abelian = list(dec.ideal), list(dec.abelian)
    m, n = len(ideal), dec.M.dim
    block = Matrix([list(f.row(i)) + [ZERO] * len(abelian) if i < m else [ZERO] * n
                    for i in range(n)], n)
    P = Matrix.from_columns(ideal + abelian, n)
    return P @ block @ inverse(P)


def isometrize(dec: StandardDecomposition, chi: Sequence[Matrix]) -> MetricLieAlgebra:
    """g ⋊_χ a on the same inner product space.

    chi[k] is a derivation of the ideal (ideal-basis coordinates) replacing
    ad of the k-th abelian basis vector. Extended by zero on a, it must have
    the symmetric part of that ad and commute with ad of every abelian vector.
    """
    _check_split(dec)
    M = dec.M
    L = M.L
    ideal, abelian = list(dec.ideal), list(dec.abelian)
    if len(chi) != len(abelian):
        raise ValueError(f"Need {len(abelian)} derivations, got {len(chi)}")
    sub = subalgebra(L, ideal)
    extended = []
    for k, c in enumerate(chi):
        if not is_derivation(sub, c):
            raise NotADerivation(f"χ of abelian vector {k + 1} is not a derivation of the ideal")
        ext = _extend_by_zero(dec, c)
        if sym_anti_split(M, ext)[0] != sym_anti_split(M, L.ad(abelian[k]))[0]:
            raise SymmetricPartMismatch(f"χ of abelian vector {k + 1} has the wrong symmetric part")
        for j, h in enumerate(abelian):
            if not commutator(ext, L.ad(h)).is_zero():
                raise CommutatorNonzero(f"[χ(X{k + 1}), ad X{j + 1}] is not zero")
        extended.append(ext)
    adapted = ideal + abelian
    m = len(ideal)
    B = Matrix.from_columns(ideal, M.dim)

    def split(v):
        coords = coordinates(v, adapted)
        return B @ coords[:m], coords[m:]

    brackets = {}
    for i in range(M.dim):
        for j in range(i + 1, M.dim):
            ui, ai = split(unit(M.dim, i))
            uj, aj = split(unit(M.dim, j))
            w = list(L.bracket(ui, uj))
            for k, ext in enumerate(extended):
                if ai[k]:
                    w = [x + ai[k] * y for x, y in zip(w, ext @ uj)]
                if aj[k]:
                    w = [x - aj[k] * y for x, y in zip(w, ext @ ui)]
            if not is_zero(w):
                brackets[(i, j)] = w
    logger.debug("Isometrized algebra has %d nonzero brackets", len(brackets))
    return MetricLieAlgebra(LieAlgebra(M.dim, brackets), M.g)


def symmetric_isometrization(dec: StandardDecomposition) -> MetricLieAlgebra:
    """isometrize with χ(X) = (ad X)^s, which must vanish on a and preserve the ideal."""
    _check_split(dec)
    M = dec.M
    ideal = list(dec.ideal)
    chi = []
    for k, h in enumerate(dec.abelian):
        s = sym_anti_split(M, M.L.ad(h))[0]
        if any(not is_zero(s @ a) for a in dec.abelian):
            raise SymmetricPartMismatch(f"(ad X{k + 1})^s does not vanish on the abelian factor")
        cols = [coordinates(s @ v, ideal) for v in ideal]
        if any(c is None for c in cols):
            raise NotAnIdeal(f"(ad X{k + 1})^s does not preserve the ideal")
        chi.append(Matrix.from_columns(cols, len(ideal)))
    return isometrize(dec, chi)
