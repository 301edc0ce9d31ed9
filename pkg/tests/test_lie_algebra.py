from fractions import Fraction

import pytest
import sympy

from exact_linalg import Matrix, unit
from lie_algebra import (
    Form,
    LieAlgebra,
    act,
    basis_form,
    center,
    ce_d,
    derivation_algebra,
    derived_series,
    interior,
    is_derivation,
    is_homomorphism,
    is_ideal,
    is_subalgebra,
    is_nilpotent,
    is_solvable,
    jacobi_check,
    lie_derivative,
    lower_central_series,
    quotient,
    require_lie,
    subalgebra,
    wedge,
)
from salamon_notation import parse_salamon
from sasaki_catalog import EX43
from sasaki_errors import DimensionTooLarge, NotALieAlgebra, NotAnIdeal

SL2 = LieAlgebra.from_constants(3, [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)])
BROKEN = LieAlgebra.from_constants(3, [(0, 1, 2, 1), (0, 2, 2, 1), (1, 2, 0, 1)])


def _random_vector(rng, n):
    return tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n))


def _random_covector(rng, n):
    return Form.covector(_random_vector(rng, n))


def _sympy_derivation_dimension(L: LieAlgebra) -> int:
    n = L.dim
    D = sympy.Matrix(n, n, sympy.symbols(f"d0:{n * n}"))
    c = lambda i, j, k: sympy.Rational(str(L.structure_constant(i, j, k)))  # noqa: E731
    equations = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                expr = sympy.sympify(
                    sum(c(i, j, m) * D[k, m] for m in range(n))
                    - sum(D[m, i] * c(m, j, k) for m in range(n))
                    - sum(D[m, j] * c(i, m, k) for m in range(n))
                )
                if expr != 0:
                    equations.append(expr)
    if not equations:
        return n * n
    A, _ = sympy.linear_eq_to_matrix(equations, list(D))
    return n * n - A.rank()


def test_heisenberg_series_and_center(heisenberg):
    assert jacobi_check(heisenberg)
    assert is_nilpotent(heisenberg) == (True, 2)
    assert center(heisenberg) == [unit(3, 2)]
    chain = lower_central_series(heisenberg)
    assert chain[1] == [unit(3, 2)]
    assert chain[2] == []
    assert is_solvable(heisenberg)


def test_jacobi_failure_reports_triple():
    res = jacobi_check(BROKEN)
    assert not res
    assert res.triple == (0, 1, 2)
    assert res.defect == (-1, 0, 0)
    with pytest.raises(NotALieAlgebra):
        require_lie(BROKEN)
    with pytest.raises(NotALieAlgebra):
        lower_central_series(BROKEN)


def test_sl2_is_neither_solvable_nor_nilpotent():
    assert jacobi_check(SL2)
    assert not is_solvable(SL2)
    assert is_nilpotent(SL2) == (False, None)
    assert len(derived_series(SL2)[-1]) == 3


@pytest.mark.parametrize("L, expected", [
    (LieAlgebra.from_constants(3, [(0, 1, 2, 1)]), 6),
    (LieAlgebra.abelian(2), 4),
    (SL2, 3),
])
def test_derivation_algebra_dimension(L, expected):
    basis = derivation_algebra(L)
    assert len(basis) == expected == _sympy_derivation_dimension(L)
    assert all(is_derivation(L, D) for D in basis)


def test_derivation_algebra_of_einstein_example_matches_sympy():
    L = parse_salamon(EX43)
    assert len(derivation_algebra(L)) == _sympy_derivation_dimension(L)


def test_heisenberg_differential(heisenberg):
    assert ce_d(heisenberg, basis_form(3, 2)) == -basis_form(3, 0, 1)
    assert ce_d(heisenberg, basis_form(3, 0)).is_zero()


def test_d_squared_vanishes():
    L = parse_salamon(EX43)
    for i in range(5):
        assert ce_d(L, ce_d(L, basis_form(5, i))).is_zero()
        for j in range(i + 1, 5):
            assert ce_d(L, ce_d(L, basis_form(5, i, j))).is_zero()


def test_wedge_and_interior():
    a, b = basis_form(3, 0), basis_form(3, 1)
    ab = wedge(a, b)
    assert ab == basis_form(3, 0, 1)
    assert wedge(b, a) == -ab
    assert ab(unit(3, 0), unit(3, 1)) == 1
    assert interior(unit(3, 0), ab) == b
    assert interior(unit(3, 1), ab) == -a
    assert wedge(a, a).is_zero()


def test_action_and_differential_are_derivations(rng):
    L = parse_salamon(EX43)
    for _ in range(10):
        a, b = _random_covector(rng, 5), _random_covector(rng, 5)
        f = Matrix([_random_vector(rng, 5) for _ in range(5)])
        assert act(f, wedge(a, b)) == wedge(act(f, a), b) + wedge(a, act(f, b))
        assert ce_d(L, wedge(a, b)) == wedge(ce_d(L, a), b) - wedge(a, ce_d(L, b))


def test_cartan_formula(rng):
    L = parse_salamon(EX43)
    for _ in range(10):
        x = _random_vector(rng, 5)
        a = _random_covector(rng, 5)
        beta = wedge(a, _random_covector(rng, 5))
        assert lie_derivative(L, x, a) == interior(x, ce_d(L, a))
        assert lie_derivative(L, x, beta) == interior(x, ce_d(L, beta)) + ce_d(L, interior(x, beta))


def test_form_matrix_roundtrip_and_antisymmetry_check():
    omega = basis_form(4, 0, 1) - basis_form(4, 2, 3) * 2
    assert Form.from_matrix(omega.matrix()) == omega
    with pytest.raises(ValueError):
        Form.from_matrix(Matrix.identity(2))


def test_quotient_and_ideals(heisenberg):
    e1, e2, e3 = (unit(3, i) for i in range(3))
    assert is_ideal(heisenberg, [e3])
    assert quotient(heisenberg, [e3], [e1, e2]).is_abelian()
    assert not is_ideal(heisenberg, [e1])
    with pytest.raises(NotAnIdeal):
        quotient(heisenberg, [e1], [e2, e3])
    assert is_subalgebra(heisenberg, [e1, e3])
    assert not is_subalgebra(heisenberg, [e1, e2])
    assert subalgebra(heisenberg, [e1, e3]).is_abelian()


def test_change_basis_is_isomorphic(heisenberg):
    columns = [unit(3, 1), unit(3, 0), unit(3, 2)]
    swapped = heisenberg.change_basis(columns)
    assert swapped.basis_bracket(0, 1) == (0, 0, -1)
    assert is_homomorphism(swapped, heisenberg, Matrix.from_columns(columns, 3))
    assert not is_homomorphism(heisenberg, heisenberg, Matrix.from_columns(columns, 3))


def test_bracket_is_antisymmetric(rng):
    L = parse_salamon(EX43)
    for _ in range(10):
        u, v = _random_vector(rng, 5), _random_vector(rng, 5)
        assert L.bracket(u, v) == tuple(-x for x in L.bracket(v, u))
        assert L.ad(u) @ v == L.bracket(u, v)


def test_dimension_cap():
    LieAlgebra(16)
    with pytest.raises(DimensionTooLarge):
        LieAlgebra(17)
