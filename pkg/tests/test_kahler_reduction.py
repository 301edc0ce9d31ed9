from fractions import Fraction

import pytest

from exact_linalg import Matrix, block_diagonal, unit
from lie_algebra import LieAlgebra, basis_form, is_homomorphism, is_nilpotent
from metric_geometry import MetricLieAlgebra
from contact_metric import check_sasaki, kahler_quotient
from standard_decomposition import StandardDecomposition, check_rank_one_sasaki
from kahler_reduction import (
    KahlerSeed,
    check_seed,
    construct_sasaki,
    extract_reduction,
    flip_hermitian_sign,
    graded_construct,
    graded_seed,
    h_normalize,
    kahler_check,
    minimal_polynomial_divides,
    reduce_kahler_extension,
    reversal_isomorphism,
    reverse_metric_sign,
    reverse_seed_sign,
    sasaki_central_extension,
    seed_violations,
    symmetrize_D,
)
from sasaki_catalog import (
    DEFINITE_2,
    DEFINITE_4,
    NEUTRAL_4,
    catalog,
    hermitian_seed,
    seed_for,
    variants,
)
from sasaki_errors import (
    CommutatorNonzero,
    NotZStandard,
    RepresentationConditionViolated,
    SeedInvariantViolated,
)

LAMBDAS = (Fraction(0), Fraction(1), Fraction(-1, 2))


def _catalog_seeds():
    for entry in catalog():
        if entry.kind == "construction":
            for v in variants(entry, LAMBDAS):
                yield seed_for(entry, v)


def _random_diagonal_seeds(rng, count):
    """Ď diagonal and constant on J-pairs with entries in {0, h/2}, so hĎ = 2Ď²."""
    for _ in range(count):
        signs = rng.choice([DEFINITE_2, DEFINITE_4, NEUTRAL_4])
        h = rng.choice([Fraction(0), Fraction(2), Fraction(4), Fraction(2, 3), Fraction(-2)])
        pairs = [rng.choice([Fraction(0), h / 2]) for _ in range(len(signs) // 2)]
        D = Matrix.diagonal([x for x in pairs for _ in range(2)])
        yield hermitian_seed(signs, D, h, rng.choice([1, -1]))


def _twin_reduction(ex43p):
    dec = StandardDecomposition.from_indices(ex43p.M, [1, 2, 3, 4], [0])
    return extract_reduction(dec, ex43p.xi)


def test_twin_reduction_ground_truth(ex43p):
    red = _twin_reduction(ex43p)
    assert red.ok, red.checks
    assert red.b == (0, -1, 0, 0, 0)
    assert red.h == 2
    assert red.tau == -1
    assert red.seed.D == Matrix.identity(2)
    assert red.seed.M.g == Matrix.diagonal([-1, -1])
    assert red.seed.omega == basis_form(2, 0, 1)
    assert red.complement == (unit(5, 2), unit(5, 3))


def test_twin_sasaki_quotient_is_heisenberg(ex43p):
    quotient = _twin_reduction(ex43p).sasaki_quotient
    assert quotient.dim == 3
    assert is_nilpotent(quotient.M.L) == (True, 2)
    assert quotient.M.g == Matrix.diagonal([-1, -1, 1])
    assert check_sasaki(quotient).verdict


def test_construct_then_extract_recovers_catalog_seeds():
    seeds = list(_catalog_seeds())
    assert len(seeds) >= 30
    for seed in seeds:
        con = construct_sasaki(seed)
        red = extract_reduction(con.decomposition, con.xi)
        assert red.ok, red.checks
        assert red.seed == seed
        assert red.b == con.b


def test_construct_then_extract_recovers_random_seeds(rng):
    for seed in _random_diagonal_seeds(rng, 20):
        con = construct_sasaki(seed)
        assert check_rank_one_sasaki(con.decomposition, con.xi).ok
        assert extract_reduction(con.decomposition, con.xi).seed == seed


def test_seed_violations_are_named():
    I2 = Matrix.identity(2)
    with pytest.raises(SeedInvariantViolated) as exc:
        construct_sasaki(hermitian_seed(DEFINITE_2, I2, 2, 2))
    assert exc.value.clause == "τ=±1"
    assert seed_violations(hermitian_seed(DEFINITE_2, Matrix.diagonal([1, 0]), 2, 1)) == ["[J,Ď]=0"]
    assert seed_violations(hermitian_seed(DEFINITE_2, I2, 0, 1)) == ["[Ďˢ,Ďᵃ]=hĎˢ-2(Ďˢ)²"]
    bad_omega = KahlerSeed(MetricLieAlgebra(LieAlgebra.abelian(2), I2), Matrix([[0, -1], [1, 0]]),
                           basis_form(2, 0, 1), Matrix.zeros(2), Fraction(0), Fraction(1))
    assert seed_violations(bad_omega) == ["ω=g(·,J·)"]
    check_seed(hermitian_seed(DEFINITE_2, I2, 2, 1))


def test_non_reeb_vector_is_not_z_standard(ex43p):
    dec = StandardDecomposition.from_indices(ex43p.M, [1, 2, 3, 4], [0])
    with pytest.raises(NotZStandard):
        extract_reduction(dec, (0, 0, Fraction(3, 4), 0, Fraction(5, 4)))


def test_reversal_isomorphism():
    for seed in (hermitian_seed(DEFINITE_2, Matrix.identity(2), 2, 1),
                 seed_for(catalog()[-2], variants(catalog()[-2], [Fraction(1)])[0])):
        reversed_seed = reverse_seed_sign(seed)
        assert kahler_check(reversed_seed.M, reversed_seed.J, reversed_seed.omega)
        P = reversal_isomorphism(seed)
        assert is_homomorphism(construct_sasaki(seed).M.L, construct_sasaki(reversed_seed).M.L, P)


def test_flipped_hermitian_sign_keeps_brackets_and_reverses_contact_block():
    seed = hermitian_seed(NEUTRAL_4, Matrix.diagonal([0, 0, 1, 1]), 2, -1)
    flipped = flip_hermitian_sign(seed)
    con, con_flipped = construct_sasaki(seed), construct_sasaki(flipped)
    assert con.M.L == con_flipped.M.L
    block = [unit(7, i) for i in range(4)]
    assert reverse_metric_sign(con.structure, block) == con_flipped.structure
    assert reverse_metric_sign(seed) == reverse_seed_sign(seed)
    with pytest.raises(ValueError):
        reverse_metric_sign(con.structure)
    with pytest.raises(TypeError):
        reverse_metric_sign(1)


def test_symmetrize_family_rows():
    rows = {e.id: e for e in catalog()}
    for lam in LAMBDAS:
        row9 = seed_for(rows["table1.9"], variants(rows["table1.9"], [lam])[0])
        sym = symmetrize_D(row9)
        check_seed(sym)
        assert minimal_polynomial_divides(sym)
        for row_id in ("table1.10", "table1.11"):
            seed = seed_for(rows[row_id], variants(rows[row_id], [lam])[0])
            with pytest.raises(CommutatorNonzero):
                symmetrize_D(seed)


def test_h_normalize():
    seed = hermitian_seed(DEFINITE_2, Matrix.identity(2) * 2, 4, 1)
    normalized, factor = h_normalize(seed)
    assert factor == Fraction(1, 2)
    assert normalized == hermitian_seed(DEFINITE_2, Matrix.identity(2), 2, 1)
    negative, factor = h_normalize(hermitian_seed(DEFINITE_2, -Matrix.identity(2), -2, 1))
    assert factor == -1
    assert negative.D == Matrix.identity(2) and negative.h == 2
    flat_seed = hermitian_seed(DEFINITE_2, Matrix.zeros(2), 0, 1)
    assert h_normalize(flat_seed) == (flat_seed, 1)


def test_minimal_polynomial_needs_symmetric_D():
    row10 = next(e for e in catalog() if e.id == "table1.10")
    seed = seed_for(row10, variants(row10, [Fraction(1)])[0])
    with pytest.raises(ValueError):
        minimal_polynomial_divides(seed)
    assert minimal_polynomial_divides(hermitian_seed(DEFINITE_4, Matrix.diagonal([0, 0, 1, 1]), 2, 1))


@pytest.mark.parametrize("signs", [DEFINITE_2, NEUTRAL_4])
def test_sasaki_central_extension(signs):
    seed = hermitian_seed(signs, Matrix.zeros(len(signs)), 0, 1)
    A = sasaki_central_extension(seed.M, seed.J, seed.omega)
    assert A.dim == len(signs) + 1
    assert check_sasaki(A).verdict


def test_reduce_kahler_extension_recovers_seed():
    seed = hermitian_seed(DEFINITE_2, Matrix.identity(2), 2, 1)
    M, J, omega, _ = kahler_quotient(construct_sasaki(seed).structure)
    assert kahler_check(M, J, omega)
    dec = StandardDecomposition.from_indices(M, [0, 1, 2], [3])
    red = reduce_kahler_extension(M, J, omega, dec)
    assert red.ok, red.checks
    assert red.seed == seed


def _plane():
    seed = hermitian_seed(DEFINITE_2, Matrix.zeros(2), 0, 1)
    return seed.M, seed.J, seed.omega


def test_graded_seed_with_trivial_representation():
    M0, J0, omega0 = _plane()
    M1, J1, omega1 = _plane()
    seed = graded_seed(M0, J0, omega0, M1, J1, omega1, [Matrix.zeros(2)] * 2, 2, 1)
    assert seed == hermitian_seed(DEFINITE_4, Matrix.diagonal([0, 0, 1, 1]), 2, 1)
    con = graded_construct(M0, J0, omega0, M1, J1, omega1, [Matrix.zeros(2)] * 2, 2, 1)
    assert check_sasaki(con.structure).verdict


def test_graded_seed_representation_conditions():
    M0, J0, omega0 = _plane()
    M1, J1, omega1 = _plane()
    with pytest.raises(RepresentationConditionViolated):
        graded_seed(M0, J0, omega0, M1, J1, omega1, [Matrix.zeros(2)], 2, 1)
    with pytest.raises(RepresentationConditionViolated):
        graded_seed(M0, J0, omega0, M1, J1, omega1, [Matrix.identity(2), Matrix.zeros(2)], 2, 1)
    heis = MetricLieAlgebra(LieAlgebra.from_constants(3, [(0, 1, 2, 1)]), Matrix.identity(3))
    with pytest.raises(RepresentationConditionViolated):
        graded_seed(M0, J0, omega0, heis, block_diagonal(J1, Matrix.zeros(1)), omega1,
                    [Matrix.zeros(3)] * 2, 2, 1)
