from fractions import Fraction

import pytest
import sympy

from exact_linalg import (
    Matrix,
    block_diagonal,
    congruence_signature,
    coordinates,
    determinant,
    extend_to_basis,
    format_scalar,
    inverse,
    kernel,
    rank,
    row_reduce,
    solve,
    to_scalar,
    unit,
)
from sasaki_errors import NotSymmetric, SasakiError


def _sym(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))


def _frac(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def _random_matrix(rng, rows, cols, spread=3):
    return Matrix([[Fraction(rng.randint(-spread, spread), rng.randint(1, 3)) for _ in range(cols)]
                   for _ in range(rows)], cols)


def _low_rank(rng, n, k):
    return _random_matrix(rng, n, k) @ _random_matrix(rng, k, n)


def test_rank_and_determinant_match_sympy(rng):
    for trial in range(30):
        n = rng.randint(1, 5)
        m = _random_matrix(rng, n, n) if trial % 2 else _low_rank(rng, n, rng.randint(1, n))
        assert rank(m) == _sym(m).rank()
        assert determinant(m) == _frac(_sym(m).det())


def test_inverse_of_nonsingular(rng):
    checked = 0
    while checked < 20:
        m = _random_matrix(rng, 4, 4)
        if determinant(m) == 0:
            continue
        assert m @ inverse(m) == Matrix.identity(4)
        assert inverse(m) == Matrix([[_frac(x) for x in row] for row in _sym(m).inv().tolist()])
        checked += 1


def test_inverse_of_singular_raises():
    with pytest.raises(ValueError):
        inverse(Matrix([[1, 2], [2, 4]]))


def test_kernel_has_free_column_unit_vectors(rng):
    for _ in range(20):
        n = rng.randint(2, 5)
        m = _low_rank(rng, n, rng.randint(1, n - 1))
        basis = kernel(m)
        assert len(basis) == n - rank(m)
        for v in basis:
            assert all(x == 0 for x in m @ v)
        free = [c for c in range(n) if c not in row_reduce(m)[1]]
        for v, f in zip(basis, free):
            assert v[f] == 1
            assert all(v[g] == 0 for g in free if g != f)


def test_solve_consistent_and_inconsistent():
    m = Matrix([[1, 1], [1, 1]])
    assert solve(m, [1, 2]) is None
    x, ker = solve(m, [2, 2])
    assert m @ x == (2, 2)
    assert len(ker) == 1
    with pytest.raises(ValueError):
        solve(m, [1])


def test_signature_matches_diagonal_congruence(rng):
    for _ in range(25):
        n = rng.randint(1, 5)
        d = [rng.choice([-2, -1, 1, 3, 0]) for _ in range(n)]
        P = _random_matrix(rng, n, n)
        if determinant(P) == 0:
            continue
        S = P.T @ Matrix.diagonal(d) @ P
        sig = congruence_signature(S)
        assert (sig.plus, sig.minus, sig.zero) == (
            sum(x > 0 for x in d), sum(x < 0 for x in d), sum(x == 0 for x in d))


def test_signature_of_hyperbolic_plane():
    sig = congruence_signature(Matrix([[0, 1], [1, 0]]))
    assert sig == (1, 1, 0)
    assert sig.nondegenerate


def test_signature_rejects_non_symmetric():
    with pytest.raises(NotSymmetric):
        congruence_signature(Matrix([[1, 2], [0, 1]]))
    assert issubclass(NotSymmetric, SasakiError)


def test_block_diagonal_with_empty_block():
    I2 = Matrix.identity(2)
    assert block_diagonal(I2, Matrix.zeros(0)) == I2
    assert block_diagonal(I2, Matrix.diagonal([3])) == Matrix.diagonal([1, 1, 3])


def test_scalar_coercion():
    assert to_scalar("3/4") == Fraction(3, 4)
    assert to_scalar(" -2 ") == -2
    assert format_scalar(Fraction(2)) == "2/1"
    assert format_scalar(Fraction(-1, 2)) == "-1/2"
    with pytest.raises(TypeError):
        to_scalar(True)
    with pytest.raises(TypeError):
        to_scalar(0.5)


def test_ragged_matrix_rejected():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])


def test_coordinates_and_extension():
    basis = [(1, 1, 0), (0, 1, 1)]
    basis = [tuple(Fraction(x) for x in v) for v in basis]
    assert coordinates((Fraction(2), Fraction(3), Fraction(1)), basis) == (2, 1)
    assert coordinates(unit(3, 0), basis) is None
    assert extend_to_basis(basis, 3) == basis + [unit(3, 0)]
