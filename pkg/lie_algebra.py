"""
Lie algebras given by structure constants, left-invariant forms and the
Chevalley-Eilenberg differential.

Conventions used everywhere in the toolkit:
  [e_i, e_j] = sum_k c^k_ij e_k
  d alpha(X, Y) = -alpha([X, Y])
  e^{ij}(e_i, e_j) = 1, i.e. (a ^ b)(X, Y) = a(X) b(Y) - a(Y) b(X)
An endomorphism f acts on forms as a derivation:
  (f.alpha)(v_1, ..., v_p) = -sum_k alpha(v_1, ..., f v_k, ..., v_p)
so the Lie derivative along x is the action of ad x.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from exact_linalg import (
    ONE,
    ZERO,
    Matrix,
    Vector,
    coordinates,
    determinant,
    independent_subset,
    is_zero,
    kernel,
    to_scalar,
    unit,
    zero_vector,
)
from sasaki_errors import DimensionTooLarge, NotAnIdeal, NotALieAlgebra

logger = logging.getLogger(__name__)

MAX_DIM = 16


class LieAlgebra:
    """Structure constants on the basis e_0..e_{n-1}; Jacobi is not enforced here."""

    __slots__ = ("dim", "_table", "_ad_basis")

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Sequence] | None = None):
        if dim > MAX_DIM:
            raise DimensionTooLarge(f"Dimension {dim} exceeds the cap of {MAX_DIM}")
        table = [[zero_vector(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"Bracket index ({i}, {j}) outside dimension {dim}")
            v = tuple(to_scalar(x) for x in value)
            if len(v) != dim:
                raise ValueError(f"Bracket [e{i},e{j}] has {len(v)} components, expected {dim}")
            if i == j:
                if not is_zero(v):
                    raise ValueError(f"[e{i},e{i}] must vanish")
                continue
            if i > j:
                i, j, v = j, i, tuple(-x for x in v)
            table[i][j] = v
            table[j][i] = tuple(-x for x in v)
        self.dim = dim
        self._table = tuple(tuple(r) for r in table)
        self._ad_basis = tuple(
            Matrix.from_columns([self._table[i][j] for j in range(dim)], dim) for i in range(dim)
        )

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls(dim)

    @classmethod
    def from_constants(cls, dim: int, constants: Iterable[tuple[int, int, int, object]]) -> "LieAlgebra":
        """Build from (i, j, k, c) meaning c^k_ij = c, 0-based, i < j."""
        acc: dict[tuple[int, int], list[Fraction]] = {}
        for i, j, k, c in constants:
            c = to_scalar(c)
            if i > j:
                i, j, c = j, i, -c
            acc.setdefault((i, j), [ZERO] * dim)[k] += c
        return cls(dim, acc)

    # basic data
    def basis_bracket(self, i: int, j: int) -> Vector:
        return self._table[i][j]

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return self._table[i][j][k]

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self._table[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                c = ui * vj
                for k, x in enumerate(row[j]):
                    if x:
                        out[k] += c * x
        return tuple(out)

    def ad(self, v: Sequence[Fraction]) -> Matrix:
        """Matrix of w -> [v, w]."""
        out = Matrix.zeros(self.dim)
        for i, vi in enumerate(v):
            if vi:
                out = out + self._ad_basis[i] * vi
        return out

    def ad_basis(self, i: int) -> Matrix:
        return self._ad_basis[i]

    def nonzero_brackets(self) -> list[tuple[int, int, Vector]]:
        return [
            (i, j, self._table[i][j])
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
            if not is_zero(self._table[i][j])
        ]

    def is_abelian(self) -> bool:
        return not self.nonzero_brackets()

    def change_basis(self, columns: Sequence[Sequence[Fraction]]) -> "LieAlgebra":
        """Same algebra written in the basis whose vectors are the given columns."""
        brackets = {}
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                w = self.bracket(columns[a], columns[b])
                if is_zero(w):
                    continue
                coords = coordinates(w, columns)
                if coords is None:
                    raise ValueError("Columns do not form a basis")
                brackets[(a, b)] = coords
        return LieAlgebra(self.dim, brackets)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self._table == other._table

    def __hash__(self) -> int:
        return hash((self.dim, self._table))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, nonzero={len(self.nonzero_brackets())})"


# --- Jacobi ------------------------------------------------------------------

@dataclass(frozen=True)
class JacobiResult:
    ok: bool
    triple: tuple[int, int, int] | None = None
    defect: Vector | None = None

    def __bool__(self) -> bool:
        return self.ok


def jacobiator(L: LieAlgebra, i: int, j: int, k: int) -> Vector:
    n = L.dim
    ei, ej, ek = unit(n, i), unit(n, j), unit(n, k)
    terms = (
        L.bracket(ei, L.basis_bracket(j, k)),
        L.bracket(ej, L.basis_bracket(k, i)),
        L.bracket(ek, L.basis_bracket(i, j)),
    )
    return tuple(a + b + c for a, b, c in zip(*terms))


def jacobi_check(L: LieAlgebra) -> JacobiResult:
    for i, j, k in itertools.combinations(range(L.dim), 3):
        defect = jacobiator(L, i, j, k)
        if not is_zero(defect):
            return JacobiResult(False, (i, j, k), defect)
    return JacobiResult(True)


def require_lie(L: LieAlgebra) -> None:
    res = jacobi_check(L)
    if not res:
        i, j, k = res.triple
        raise NotALieAlgebra(f"Jacobi identity fails on (e{i + 1}, e{j + 1}, e{k + 1})")


# --- subspaces and series ----------------------------------------------------

def full_space(n: int) -> list[Vector]:
    return [unit(n, i) for i in range(n)]


def bracket_span(L: LieAlgebra, A: Sequence[Vector], B: Sequence[Vector]) -> list[Vector]:
    """Basis of [A, B]."""
    return independent_subset([L.bracket(a, b) for a in A for b in B], L.dim)


def lower_central_series(L: LieAlgebra) -> list[list[Vector]]:
    """g, [g,g], [g,[g,g]], ... up to and including the first repeated term."""
    require_lie(L)
    chain = [full_space(L.dim)]
    while True:
        nxt = bracket_span(L, chain[0], chain[-1])
        chain.append(nxt)
        if len(nxt) == len(chain[-2]):
            return chain


def derived_series(L: LieAlgebra) -> list[list[Vector]]:
    require_lie(L)
    chain = [full_space(L.dim)]
    while True:
        nxt = bracket_span(L, chain[-1], chain[-1])
        chain.append(nxt)
        if len(nxt) == len(chain[-2]):
            return chain


class Nilpotency(NamedTuple):
    nilpotent: bool
    step: int | None


def is_nilpotent(L: LieAlgebra) -> Nilpotency:
    chain = lower_central_series(L)
    if chain[-1]:
        return Nilpotency(False, None)
    step = next(k for k, term in enumerate(chain) if not term)
    return Nilpotency(True, step)


def is_solvable(L: LieAlgebra) -> bool:
    return not derived_series(L)[-1]


def centralizer_of(L: LieAlgebra, vectors: Sequence[Vector]) -> list[Vector]:
    """Basis of {y : [x, y] = 0 for all x in vectors}."""
    if not vectors:
        return full_space(L.dim)
    rows = []
    for x in vectors:
        rows.extend(L.ad(x).to_lists())
    return kernel(Matrix(rows, L.dim))


def center(L: LieAlgebra) -> list[Vector]:
    return centralizer_of(L, full_space(L.dim))


def centralizer(L: LieAlgebra, X: Sequence[Fraction]) -> list[Vector]:
    return centralizer_of(L, [tuple(X)])


def is_subalgebra(L: LieAlgebra, basis: Sequence[Vector]) -> bool:
    return all(coordinates(L.bracket(a, b), basis) is not None for a in basis for b in basis)


def is_ideal(L: LieAlgebra, basis: Sequence[Vector]) -> bool:
    return all(coordinates(L.bracket(unit(L.dim, i), b), basis) is not None
               for i in range(L.dim) for b in basis)


def subalgebra(L: LieAlgebra, basis: Sequence[Vector]) -> LieAlgebra:
    """Induced algebra written in coordinates relative to the given basis."""
    m = len(basis)
    brackets = {}
    for a in range(m):
        for b in range(a + 1, m):
            w = L.bracket(basis[a], basis[b])
            if is_zero(w):
                continue
            coords = coordinates(w, basis)
            if coords is None:
                raise ValueError("Subspace is not closed under the bracket")
            brackets[(a, b)] = coords
    return LieAlgebra(m, brackets)


def quotient(L: LieAlgebra, ideal: Sequence[Vector], complement: Sequence[Vector]) -> LieAlgebra:
    """L / ideal, written on the complement basis (projection along the ideal)."""
    if not is_ideal(L, ideal):
        raise NotAnIdeal("Cannot take a quotient by a subspace that is not an ideal")
    full = list(complement) + list(ideal)
    m = len(complement)
    brackets = {}
    for a in range(m):
        for b in range(a + 1, m):
            coords = coordinates(L.bracket(complement[a], complement[b]), full)
            if coords is None:
                raise ValueError("Complement and ideal do not span the algebra")
            if not is_zero(coords[:m]):
                brackets[(a, b)] = coords[:m]
    return LieAlgebra(m, brackets)


def subspace_is_nilpotent(L: LieAlgebra, basis: Sequence[Vector]) -> bool:
    return is_nilpotent(subalgebra(L, basis)).nilpotent


# --- derivations and homomorphisms -------------------------------------------

def derivation_defect(L: LieAlgebra, D: Matrix, i: int, j: int) -> Vector:
    ei, ej = unit(L.dim, i), unit(L.dim, j)
    lhs = D @ L.basis_bracket(i, j)
    r1 = L.bracket(D @ ei, ej)
    r2 = L.bracket(ei, D @ ej)
    return tuple(a - b - c for a, b, c in zip(lhs, r1, r2))


def is_derivation(L: LieAlgebra, D: Matrix) -> bool:
    return all(
        is_zero(derivation_defect(L, D, i, j))
        for i in range(L.dim)
        for j in range(i + 1, L.dim)
    )


def derivation_algebra(L: LieAlgebra) -> list[Matrix]:
    """Basis of Der(L) as the kernel of D -> D[x,y] - [Dx,y] - [x,Dy]."""
    n = L.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = L.basis_bracket(i, j)
            for k in range(n):
                row = [ZERO] * (n * n)
                for m in range(n):
                    if cij[m]:
                        row[k * n + m] += cij[m]
                    cmj = L.structure_constant(m, j, k)
                    if cmj:
                        row[m * n + i] -= cmj
                    cim = L.structure_constant(i, m, k)
                    if cim:
                        row[m * n + j] -= cim
                rows.append(row)
    if not rows:
        return [Matrix([[ONE if (a, b) == (r, c) else ZERO for b in range(n)] for a in range(n)], n)
                for r in range(n) for c in range(n)]
    return [Matrix([v[a * n:(a + 1) * n] for a in range(n)], n) for v in kernel(Matrix(rows, n * n))]


def is_homomorphism(L1: LieAlgebra, L2: LieAlgebra, P: Matrix) -> bool:
    """P: L1 -> L2 (columns are images of the basis) preserves brackets."""
    for i in range(L1.dim):
        for j in range(i + 1, L1.dim):
            lhs = P @ L1.basis_bracket(i, j)
            rhs = L2.bracket(P.column(i), P.column(j))
            if lhs != rhs:
                return False
    return True


# --- forms -------------------------------------------------------------------

def _sort_sign(indices: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation (0 if an index repeats) and the sorted tuple."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, tuple(sorted(idx))
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign, tuple(sorted(idx))


class Form:
    """Left-invariant p-form: coefficients on e^I for strictly increasing I."""

    __slots__ = ("dim", "degree", "_coeffs")

    def __init__(self, dim: int, degree: int, coeffs: Mapping[tuple[int, ...], object] | None = None):
        acc: dict[tuple[int, ...], Fraction] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"Index {idx} does not have length {degree}")
            if any(not 0 <= i < dim for i in idx):
                raise IndexError(f"Index {idx} outside dimension {dim}")
            sign, key = _sort_sign(idx)
            if sign == 0:
                continue
            acc[key] = acc.get(key, ZERO) + sign * to_scalar(c)
        self.dim = dim
        self.degree = degree
        self._coeffs = {k: v for k, v in sorted(acc.items()) if v != 0}

    @classmethod
    def zero(cls, dim: int, degree: int) -> "Form":
        return cls(dim, degree)

    @classmethod
    def covector(cls, values: Sequence) -> "Form":
        return cls(len(values), 1, {(i,): v for i, v in enumerate(values) if to_scalar(v) != 0})

    @classmethod
    def from_matrix(cls, m: Matrix) -> "Form":
        """2-form with alpha(e_i, e_j) = m[i, j] (m must be antisymmetric)."""
        if m != -m.T:
            raise ValueError("2-form matrix must be antisymmetric")
        n = m.rows
        return cls(n, 2, {(i, j): m[i, j] for i in range(n) for j in range(i + 1, n) if m[i, j] != 0})

    def items(self):
        return self._coeffs.items()

    def coefficient(self, indices: Sequence[int]) -> Fraction:
        sign, key = _sort_sign(indices)
        return sign * self._coeffs.get(key, ZERO) if sign else ZERO

    def vector(self) -> Vector:
        if self.degree != 1:
            raise ValueError("Only 1-forms have a coefficient vector")
        return tuple(self._coeffs.get((i,), ZERO) for i in range(self.dim))

    def matrix(self) -> Matrix:
        if self.degree != 2:
            raise ValueError("Only 2-forms have a matrix")
        out = [[ZERO] * self.dim for _ in range(self.dim)]
        for (i, j), c in self._coeffs.items():
            out[i][j] = c
            out[j][i] = -c
        return Matrix(out, self.dim)

    def __call__(self, *vectors: Sequence[Fraction]) -> Fraction:
        if len(vectors) != self.degree:
            raise ValueError(f"{self.degree}-form evaluated on {len(vectors)} vectors")
        total = ZERO
        for idx, c in self._coeffs.items():
            minor = Matrix([[v[i] for i in idx] for v in vectors], self.degree)
            total += c * (determinant(minor) if self.degree else ONE)
        return total

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: "Form") -> None:
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise ValueError("Forms of different type")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        acc = dict(self._coeffs)
        for k, v in other._coeffs.items():
            acc[k] = acc.get(k, ZERO) + v
        return Form(self.dim, self.degree, acc)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.dim, self.degree, {k: -v for k, v in self._coeffs.items()})

    def __mul__(self, c) -> "Form":
        c = to_scalar(c)
        return Form(self.dim, self.degree, {k: c * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and (self.dim, self.degree) == (other.dim, other.degree)
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.degree, tuple(self._coeffs.items())))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"{c}*e^{''.join(str(i + 1) for i in k)}" for k, c in self._coeffs.items())


def basis_form(dim: int, *indices: int) -> Form:
    """e^{i1 i2 ...} with 0-based indices."""
    return Form(dim, len(indices), {tuple(indices): ONE})


def _from_evaluation(dim: int, degree: int, evaluate) -> Form:
    coeffs = {}
    for idx in itertools.combinations(range(dim), degree):
        c = evaluate([unit(dim, i) for i in idx])
        if c:
            coeffs[idx] = c
    return Form(dim, degree, coeffs)


def wedge(a: Form, b: Form) -> Form:
    if a.dim != b.dim:
        raise ValueError("Forms live on different spaces")
    acc: dict[tuple[int, ...], Fraction] = {}
    for I, x in a.items():
        for J, y in b.items():
            sign, key = _sort_sign(I + J)
            if sign:
                acc[key] = acc.get(key, ZERO) + sign * x * y
    return Form(a.dim, a.degree + b.degree, acc)


def interior(x: Sequence[Fraction], alpha: Form) -> Form:
    """x ⌟ alpha."""
    if alpha.degree == 0:
        raise ValueError("Cannot contract a function")
    return _from_evaluation(alpha.dim, alpha.degree - 1, lambda vs: alpha(tuple(x), *vs))


def act(f: Matrix, alpha: Form) -> Form:
    """Derivation action of an endomorphism on forms."""
    def evaluate(vs):
        total = ZERO
        for k in range(len(vs)):
            moved = list(vs)
            moved[k] = f @ vs[k]
            total -= alpha(*moved)
        return total

    return _from_evaluation(alpha.dim, alpha.degree, evaluate)


def pullback(alpha: Form, columns: Sequence[Sequence[Fraction]]) -> Form:
    """Restriction of alpha to the span of the columns, in their coordinates."""
    m = len(columns)
    return _from_evaluation(m, alpha.degree, lambda vs: alpha(*[
        tuple(sum((c[k] * col[i] for k, col in enumerate(columns)), ZERO) for i in range(alpha.dim))
        for c in vs
    ]))


def lie_derivative(L: LieAlgebra, x: Sequence[Fraction], alpha: Form) -> Form:
    return act(L.ad(x), alpha)


def ce_d(L: LieAlgebra, alpha: Form) -> Form:
    """Chevalley-Eilenberg differential of a left-invariant form."""
    if alpha.dim != L.dim:
        raise ValueError("Form and algebra dimensions differ")
    p = alpha.degree

    def evaluate(vs):
        total = ZERO
        for i in range(p + 1):
            for j in range(i + 1, p + 1):
                rest = [v for k, v in enumerate(vs) if k not in (i, j)]
                term = alpha(L.bracket(vs[i], vs[j]), *rest)
                total += term if (i + j) % 2 == 0 else -term
        return total

    return _from_evaluation(L.dim, p + 1, evaluate)
