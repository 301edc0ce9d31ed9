from fractions import Fraction

import pytest

from exact_linalg import Matrix, unit
from contact_metric import (
    AlmostContactData,
    check_acms,
    check_contact,
    check_normal,
    check_sasaki,
    d_homothety,
    fundamental_form,
    kahler_quotient,
    nabla_phi_identity,
    orthogonal_projection,
    phi_from_fundamental_form,
)
from kahler_reduction import kahler_check
from lie_algebra import basis_form
from sasaki_errors import NonPositiveParameter, NotAnIdeal


def test_einstein_example_is_sasaki(ex43):
    report = check_sasaki(ex43)
    assert report.is_acms
    assert report.normal and report.contact
    assert report.nabla_phi_identity
    assert report.definition_route
    assert report.consequences.ok
    assert report.center_in_reeb_line
    assert report.verdict
    assert report.to_dict()["verdict"] is True


def test_isometric_twin_is_sasaki_with_central_reeb_vector(ex43p):
    report = check_sasaki(ex43p)
    assert report.verdict
    assert report.center_in_reeb_line


def test_perturbed_phi_is_rejected(ex43, rng):
    n = ex43.dim
    for _ in range(50):
        k = rng.randrange(n)
        i, j = (4, k) if rng.random() < 0.5 else (k, 4)
        delta = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        rows = ex43.phi.to_lists()
        rows[i][j] += delta
        perturbed = AlmostContactData(ex43.M, Matrix(rows, n), ex43.xi)
        report = check_sasaki(perturbed)
        assert not report.is_acms
        assert not report.verdict


def test_acms_failures_are_named(ex43):
    assert check_acms(ex43)
    zero_phi = AlmostContactData(ex43.M, Matrix.zeros(5), ex43.xi)
    assert check_acms(zero_phi).failed == "φ²=-id+η⊗ξ"
    long_xi = AlmostContactData(ex43.M, ex43.phi, (0, 0, 0, 0, 2))
    assert check_acms(long_xi).failed == "g(ξ,ξ)=1"


def test_negated_phi_is_normal_but_not_contact(ex43):
    flipped = AlmostContactData(ex43.M, -ex43.phi, ex43.xi)
    report = check_sasaki(flipped)
    assert report.is_acms
    assert report.normal
    assert not report.contact
    assert not report.nabla_phi_identity
    assert not report.verdict


def test_routes_agree_on_einstein_example(ex43):
    assert (check_normal(ex43) and check_contact(ex43)) == nabla_phi_identity(ex43)


def test_fundamental_form_roundtrip(ex43):
    Phi = fundamental_form(ex43)
    assert Phi == basis_form(5, 0, 1) + basis_form(5, 2, 3)
    assert phi_from_fundamental_form(ex43.M, Phi) == ex43.phi


@pytest.mark.parametrize("a", [2, Fraction(1, 3)])
def test_d_homothety_preserves_sasaki(ex43, a):
    deformed = d_homothety(ex43, a)
    assert deformed.M.inner(deformed.xi, deformed.xi) == 1
    assert check_sasaki(deformed).verdict


@pytest.mark.parametrize("a", [0, -1])
def test_d_homothety_needs_positive_parameter(ex43, a):
    with pytest.raises(NonPositiveParameter):
        d_homothety(ex43, a)


def test_kahler_quotient_of_central_reeb_line(ex43p):
    M, J, omega, complement = kahler_quotient(ex43p)
    assert M.dim == 4
    assert complement == [unit(5, i) for i in range(4)]
    assert kahler_check(M, J, omega)


def test_kahler_quotient_needs_central_reeb_vector(ex43):
    with pytest.raises(NotAnIdeal):
        kahler_quotient(ex43)


def test_orthogonal_projection_is_idempotent(ex43):
    P = orthogonal_projection(ex43.M, [unit(5, 0), unit(5, 1)])
    assert P @ P == P
    assert P == Matrix.diagonal([1, 1, 0, 0, 0])
