from fractions import Fraction

import pytest

from exact_linalg import Matrix, unit
from lie_algebra import LieAlgebra, basis_form
from metric_geometry import (
    Connection,
    MetricLieAlgebra,
    adjoint,
    check_connection,
    curvature,
    flat,
    is_metric_antisymmetric,
    is_metric_symmetric,
    levi_civita,
    nabla_two_form,
    nabla_two_form_decomposed,
    ricci_via_metric,
    sharp,
    standard_connection_formulas,
    sym_anti_split,
)
from salamon_notation import parse_salamon
from sasaki_catalog import EX43, EX43P
from sasaki_errors import CharacterizationMismatch, DegenerateMetric, NotSymmetric

LORENTZ = Matrix.diagonal([-1, -1, -1, -1, 1])


def _random_vector(rng, n):
    return tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n))


def test_degenerate_and_non_symmetric_metrics_rejected(heisenberg):
    with pytest.raises(DegenerateMetric):
        MetricLieAlgebra(heisenberg, Matrix.diagonal([1, 0, 1]))
    with pytest.raises(NotSymmetric):
        MetricLieAlgebra(heisenberg, Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))
    with pytest.raises(ValueError):
        MetricLieAlgebra(heisenberg, Matrix.identity(2))


def test_signature_and_musical_maps(rng):
    M = MetricLieAlgebra(parse_salamon(EX43), LORENTZ)
    assert (M.signature.plus, M.signature.minus) == (1, 4)
    for _ in range(5):
        v = _random_vector(rng, 5)
        assert sharp(M, flat(M, v)) == v


def test_adjoint_and_split(rng):
    M = MetricLieAlgebra(parse_salamon(EX43), LORENTZ)
    for _ in range(5):
        f = Matrix([_random_vector(rng, 5) for _ in range(5)])
        u, v = _random_vector(rng, 5), _random_vector(rng, 5)
        assert M.inner(adjoint(M, f) @ u, v) == M.inner(u, f @ v)
        s, a = sym_anti_split(M, f)
        assert s + a == f
        assert is_metric_symmetric(M, s)
        assert is_metric_antisymmetric(M, a)


@pytest.mark.parametrize("text, diagonal", [
    (EX43, [-1, -1, -1, -1, 1]),
    (EX43P, [-1, -1, -1, -1, 1]),
    ("(0,0,-e^{12})", [1, -1, 1]),
    ("(0,0,e^{13},-e^{12})", [1, 1, -1, 1]),
])
def test_levi_civita_self_checks(text, diagonal):
    M = MetricLieAlgebra(parse_salamon(text), Matrix.diagonal(diagonal))
    check = check_connection(M)
    assert check.metric_compatible
    assert check.torsion_free
    assert check.bianchi
    assert check.ricci_symmetric
    assert check.ricci_routes_agree
    assert check.ok


def test_einstein_example_has_ric_4g():
    M = MetricLieAlgebra(parse_salamon(EX43), LORENTZ)
    curv = curvature(M, levi_civita(M))
    assert curv.ric == M.g * 4
    assert ricci_via_metric(M, curv) == curv.ric


def test_heisenberg_ricci(heisenberg):
    M = MetricLieAlgebra(heisenberg, Matrix.identity(3))
    curv = curvature(M, levi_civita(M))
    assert curv.ric == Matrix.diagonal([Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 2)])


def test_abelian_algebra_is_flat():
    M = MetricLieAlgebra(LieAlgebra.abelian(3), Matrix.diagonal([1, -1, 1]))
    C = levi_civita(M)
    assert all(C.nabla(i).is_zero() for i in range(3))


def test_standard_connection_formulas_on_isometric_twin():
    M = MetricLieAlgebra(parse_salamon(EX43P), LORENTZ)
    ideal = [unit(5, i) for i in range(1, 5)]
    assert standard_connection_formulas(M, levi_civita(M), ideal, [unit(5, 0)])


def test_nabla_of_two_form_decomposition(rng):
    M = MetricLieAlgebra(parse_salamon(EX43), LORENTZ)
    C = levi_civita(M)
    Phi = basis_form(5, 0, 1) + basis_form(5, 2, 3)
    for i in range(5):
        x = unit(5, i)
        assert nabla_two_form(M, C, Phi, x) == nabla_two_form_decomposed(M, Phi, x)
    x = _random_vector(rng, 5)
    beta = basis_form(5, 1, 4) * 3 - basis_form(5, 0, 2)
    assert nabla_two_form(M, C, beta, x) == nabla_two_form_decomposed(M, beta, x)


def test_nabla_of_two_form_rejects_a_foreign_connection():
    M = MetricLieAlgebra(parse_salamon(EX43), LORENTZ)
    Phi = basis_form(5, 0, 1) + basis_form(5, 2, 3)
    moving = [unit(5, i) for i in range(5) if not nabla_two_form_decomposed(M, Phi, unit(5, i)).is_zero()]
    assert moving
    trivial = Connection([Matrix.zeros(5)] * 5)
    with pytest.raises(CharacterizationMismatch):
        nabla_two_form(M, trivial, Phi, moving[0])
