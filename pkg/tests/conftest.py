import random
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from exact_linalg import Matrix, unit  # noqa: E402
from lie_algebra import LieAlgebra  # noqa: E402
from metric_geometry import MetricLieAlgebra  # noqa: E402
from salamon_notation import parse_form, parse_salamon  # noqa: E402
from contact_metric import AlmostContactData, phi_from_fundamental_form  # noqa: E402
from sasaki_catalog import EX43, EX43P  # noqa: E402

LORENTZ_5 = (-1, -1, -1, -1, 1)


def printed_structure(text: str, diagonal, phi: str, xi_index: int, bindings=None) -> AlmostContactData:
    L = parse_salamon(text, bindings)
    M = MetricLieAlgebra(L, Matrix.diagonal(diagonal))
    Phi = parse_form(phi, L.dim, bindings)
    return AlmostContactData(M, phi_from_fundamental_form(M, Phi), unit(L.dim, xi_index - 1))


@pytest.fixture
def rng():
    return random.Random(20240517)


@pytest.fixture
def ex43() -> AlmostContactData:
    return printed_structure(EX43, LORENTZ_5, "e^{12}+e^{34}", 5)


@pytest.fixture
def ex43p() -> AlmostContactData:
    return printed_structure(EX43P, LORENTZ_5, "e^{12}+e^{34}", 5)


@pytest.fixture
def heisenberg() -> LieAlgebra:
    """[e1, e2] = e3."""
    return LieAlgebra.from_constants(3, [(0, 1, 2, 1)])
