import json
from fractions import Fraction

import pytest

from exact_linalg import Matrix, unit
from lie_algebra import basis_form
from salamon_notation import parse_salamon
from sasaki_catalog import DEFINITE_2, EX43, hermitian_seed, verify_all
from sasaki_data import (
    SCHEMA_VERSION,
    algebra_from_dict,
    algebra_to_dict,
    decode_form,
    dumps,
    encode_brackets,
    encode_form,
    encode_vector,
    load_reports,
    loads,
    seed_from_dict,
    seed_to_dict,
    write_reports,
)
from sasaki_errors import SasakiError
from standard_decomposition import StandardDecomposition


def test_form_encoding_is_one_based():
    omega = basis_form(4, 0, 1) - basis_form(4, 2, 3) * Fraction(1, 2)
    assert encode_form(omega) == [[1, 2, "1/1"], [3, 4, "-1/2"]]
    assert decode_form(encode_form(omega), 4) == omega


def test_brackets_hold_one_structure_constant_per_entry(heisenberg):
    assert encode_brackets(heisenberg) == [[1, 2, 3, "1/1"]]
    assert algebra_from_dict({"dim": 3, "brackets": [[1, 2, 3, "1/1"]]}).L == heisenberg
    assert algebra_from_dict({"dim": 3, "brackets": [[2, 1, 3, "-1/1"]]}).L == heisenberg
    halves = [[1, 2, 3, "1/2"], [1, 2, 3, "1/2"]]
    assert algebra_from_dict({"dim": 3, "brackets": halves}).L == heisenberg


def test_ex43_brackets_literal():
    L = parse_salamon(EX43)
    items = encode_brackets(L)
    assert [1, 2, 2, "2/1"] in items
    assert [1, 3, 3, "1/1"] in items
    assert algebra_from_dict({"dim": 5, "brackets": items}).L == L


@pytest.mark.parametrize("items", [
    [[1, 2, ["0/1", "0/1", "1/1"]]],
    [[1, 4, 3, "1/1"]],
    [[0, 2, 3, "1/1"]],
    [[1, 1, 3, "1/1"]],
    [[1, 2, "3", "1/1"]],
    [3],
])
def test_malformed_brackets(items):
    with pytest.raises(SasakiError):
        algebra_from_dict({"dim": 3, "brackets": items})


def _twin_dict(ex43p, decomposition):
    return {**algebra_to_dict(ex43p.M.L, ex43p.M), "decomposition": decomposition}


def test_decomposition_from_indices(ex43p):
    data = _twin_dict(ex43p, {"ideal": [2, 3, 4, 5], "e0": 1, "tau": -1, "xi": 5})
    loaded = algebra_from_dict(loads(dumps(data)))
    assert loaded.decomposition == StandardDecomposition.from_indices(ex43p.M, [1, 2, 3, 4], [0])
    assert loaded.xi == unit(5, 4)
    assert loaded.structure is None
    vectors = {"ideal": [encode_vector(unit(5, i)) for i in range(1, 5)], "abelian": [1]}
    assert algebra_from_dict(_twin_dict(ex43p, vectors)).decomposition == loaded.decomposition


def test_decomposition_written_with_e0_and_tau(ex43p):
    dec = StandardDecomposition.from_indices(ex43p.M, [1, 2, 3, 4], [0])
    data = algebra_to_dict(ex43p.M.L, ex43p.M, ex43p, dec)
    assert data["decomposition"]["e0"] == ["1/1", "0/1", "0/1", "0/1", "0/1"]
    assert data["decomposition"]["tau"] == "-1/1"
    loaded = algebra_from_dict(data)
    assert loaded.decomposition == dec
    assert loaded.xi == ex43p.xi


@pytest.mark.parametrize("decomposition", [
    {"ideal": [2, 3, 4, 5], "e0": 1, "tau": 1},
    {"ideal": [2, 3, 4, 5], "e0": 1, "tau": "2"},
    {"ideal": [2, 3, 4, 9], "e0": 1},
    {"ideal": ["x"], "e0": 1},
    {"ideal": [2, 3, 4, 5]},
    {"ideal": [2, 3, 4, 5], "e0": 1, "abelian": [2]},
    {"ideal": [2, 3, 4, 5], "e0": [1, 0]},
    {"abelian": [1]},
    [2, 3, 4, 5],
])
def test_malformed_decomposition(ex43p, decomposition):
    with pytest.raises(SasakiError):
        algebra_from_dict(_twin_dict(ex43p, decomposition))


def test_decomposition_xi_must_agree(ex43p):
    data = {**algebra_to_dict(ex43p.M.L, ex43p.M, ex43p),
            "decomposition": {"ideal": [2, 3, 4, 5], "e0": 1, "xi": 4}}
    with pytest.raises(SasakiError):
        algebra_from_dict(data)


def test_algebra_dict_with_structure(ex43):
    data = json.loads(dumps(algebra_to_dict(ex43.M.L, ex43.M, ex43)))
    assert data["dim"] == 5
    assert data["metric"][0][0] == "-1/1"
    loaded = algebra_from_dict(data)
    assert loaded.L == ex43.M.L
    assert loaded.structure == ex43
    assert loaded.decomposition is None


def test_algebra_from_salamon_text():
    loaded = algebra_from_dict({"salamon": "(0,0,-τe^{12})", "bindings": {"tau": "-1"}})
    assert loaded.L == parse_salamon("(0,0,e^{12})")
    assert loaded.M is None
    assert algebra_from_dict({"salamon": EX43, "dim": 5}).L == parse_salamon(EX43)
    with pytest.raises(SasakiError):
        algebra_from_dict({"salamon": EX43, "dim": 4})
    with pytest.raises(SasakiError):
        algebra_from_dict({"brackets": []})


def test_seed_dict():
    seed = hermitian_seed(DEFINITE_2, Matrix.identity(2), 2, -1)
    data = seed_to_dict(seed)
    assert data["h"] == "2/1"
    assert data["tau"] == "-1/1"
    assert seed_from_dict(loads(dumps(data))) == seed
    del data["J"]
    with pytest.raises(SasakiError) as exc:
        seed_from_dict(data)
    assert "'J'" in str(exc.value)


def test_loads_rejects_invalid_json():
    assert loads('{"a": [1, "1/2"]}') == {"a": [1, "1/2"]}
    with pytest.raises(SasakiError):
        loads("{not json")
    with pytest.raises(SasakiError):
        loads("")


def test_report_file_and_cache(tmp_path):
    path = tmp_path / "reports.json"
    assert load_reports(path) is None
    reports = verify_all("dim5.1")
    write_reports(path, reports)
    data = load_reports(path)
    assert data["schema"] == SCHEMA_VERSION
    assert data["passed"] is True
    assert len(data["reports"]) == 4
    assert load_reports(path) is data
    assert all("wall_time" not in r for r in data["reports"])


def test_report_file_with_other_schema(tmp_path):
    path = tmp_path / "old.json"
    path.write_text(json.dumps({"schema": 0, "reports": []}), encoding="utf-8")
    assert load_reports(path) is None
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert load_reports(broken) is None
