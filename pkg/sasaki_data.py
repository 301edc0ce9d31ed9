"""
JSON encoding of algebras, Kähler seeds and verification reports.

Indices are 1-based and scalars are exact "num/den" strings, so files
round-trip without loss. Report files carry "schema": 1 and are served to the
web viewer through an in-memory cache keyed by (path, mtime).
Uses orjson for faster parse when available.
"""

from __future__ import annotations

import json
import logging
import threading
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from exact_linalg import Matrix, Vector, format_scalar, to_scalar, unit
from lie_algebra import Form, LieAlgebra
from metric_geometry import MetricLieAlgebra
from salamon_notation import parse_salamon
from contact_metric import AlmostContactData
from standard_decomposition import StandardDecomposition
from kahler_reduction import KahlerSeed
from sasaki_errors import SasakiError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

try:
    import orjson

    def _load_json(path: Path) -> dict:
        return orjson.loads(path.read_bytes())

    def _loads_json(text: str):
        return orjson.loads(text)

    def _dump_json(obj) -> str:
        return orjson.dumps(obj, option=orjson.OPT_INDENT_2).decode("utf-8")

    _json_errors: tuple = (orjson.JSONDecodeError, ValueError)
except ImportError:
    def _load_json(path: Path) -> dict:
        with open(path, encoding="utf-8") as f:
            return json.load(f)

    def _loads_json(text: str):
        return json.loads(text)

    def _dump_json(obj) -> str:
        return json.dumps(obj, indent=2, ensure_ascii=False)

    _json_errors = (json.JSONDecodeError, ValueError)


def dumps(obj) -> str:
    return _dump_json(obj)


def loads(text: str):
    try:
        return _loads_json(text)
    except _json_errors as e:
        raise SasakiError(f"Invalid JSON: {e}") from e


# --- scalars, vectors, matrices ----------------------------------------------

def encode_vector(v: Sequence) -> list[str]:
    return [format_scalar(to_scalar(x)) for x in v]


def decode_vector(values: Sequence) -> Vector:
    return tuple(to_scalar(x) for x in values)


def encode_matrix(m: Matrix) -> list[list[str]]:
    return [encode_vector(m.row(i)) for i in range(m.rows)]


def decode_matrix(rows: Sequence[Sequence]) -> Matrix:
    return Matrix([decode_vector(r) for r in rows])


def encode_form(alpha: Form) -> list[list]:
    """[[i, j, "c"], ...] with 1-based indices."""
    return [[*(i + 1 for i in idx), format_scalar(c)] for idx, c in alpha.items()]


def decode_form(items: Sequence[Sequence], dim: int, degree: int = 2) -> Form:
    return Form(dim, degree, {tuple(int(i) - 1 for i in item[:degree]): to_scalar(item[degree])
                              for item in items})


# --- algebras ----------------------------------------------------------------

def encode_brackets(L: LieAlgebra) -> list[list]:
    """Nonzero structure constants c^k_ij as [i, j, k, "c"], i < j, 1-based."""
    return [[i + 1, j + 1, k + 1, format_scalar(c)]
            for i, j, v in L.nonzero_brackets()
            for k, c in enumerate(v) if c]


def _index(value, dim: int, what: str) -> int:
    """1-based index from JSON to 0-based."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise SasakiError(f"{what}: expected a 1-based index, got {value!r}")
    if not 1 <= value <= dim:
        raise SasakiError(f"{what}: index {value} outside 1..{dim}")
    return value - 1


def decode_brackets(dim: int, items: Sequence[Sequence]) -> LieAlgebra:
    constants = []
    for item in items:
        if not isinstance(item, (list, tuple)) or len(item) != 4:
            raise SasakiError(f"Bracket entry must be [i, j, k, \"num/den\"], got {item!r}")
        i, j, k = (_index(x, dim, "brackets") for x in item[:3])
        if i == j:
            raise SasakiError(f"Bracket entry {item!r} repeats index {i + 1}")
        constants.append((i, j, k, to_scalar(item[3])))
    return LieAlgebra.from_constants(dim, constants)


def _decode_element(value, dim: int, what: str) -> Vector:
    """A basis index (1-based int) or a full coordinate vector."""
    if isinstance(value, int) and not isinstance(value, bool):
        return unit(dim, _index(value, dim, what))
    if isinstance(value, (list, tuple)) and len(value) == dim:
        return decode_vector(value)
    raise SasakiError(f"{what}: expected an index or a vector of length {dim}, got {value!r}")


class LoadedAlgebra(NamedTuple):
    L: LieAlgebra
    M: MetricLieAlgebra | None
    structure: AlmostContactData | None
    decomposition: StandardDecomposition | None
    xi: Vector | None = None


def algebra_to_dict(
    L: LieAlgebra,
    M: MetricLieAlgebra | None = None,
    structure: AlmostContactData | None = None,
    decomposition: StandardDecomposition | None = None,
) -> dict:
    out: dict = {"dim": L.dim, "brackets": encode_brackets(L)}
    if M is not None:
        out["metric"] = encode_matrix(M.g)
    if structure is not None:
        out["xi"] = encode_vector(structure.xi)
        out["phi"] = encode_matrix(structure.phi)
    if decomposition is not None:
        d: dict = {
            "ideal": [encode_vector(v) for v in decomposition.ideal],
            "abelian": [encode_vector(v) for v in decomposition.abelian],
        }
        if decomposition.rank == 1:
            d["e0"] = encode_vector(decomposition.e0)
            d["tau"] = format_scalar(decomposition.tau)
        if structure is not None:
            d["xi"] = encode_vector(structure.xi)
        out["decomposition"] = d
    return out


def _decode_decomposition(M: MetricLieAlgebra, d) -> tuple[StandardDecomposition, Vector | None]:
    n = M.dim
    if not isinstance(d, dict) or "ideal" not in d:
        raise SasakiError("decomposition needs an \"ideal\" list")
    ideal = tuple(_decode_element(v, n, "decomposition.ideal") for v in d["ideal"])
    abelian = tuple(_decode_element(v, n, "decomposition.abelian") for v in d.get("abelian", []))
    if "e0" in d:
        e0 = _decode_element(d["e0"], n, "decomposition.e0")
        if abelian and abelian != (e0,):
            raise SasakiError("decomposition.e0 disagrees with decomposition.abelian")
        abelian = (e0,)
    if not abelian:
        raise SasakiError("decomposition needs \"abelian\" or \"e0\"")
    dec = StandardDecomposition(M, ideal, abelian)
    if "tau" in d:
        tau = to_scalar(d["tau"])
        if tau not in (1, -1):
            raise SasakiError(f"decomposition.tau must be 1 or -1, got {d['tau']!r}")
        if dec.tau != tau:
            raise SasakiError(f"decomposition.tau is {tau} but g(e0, e0) = {dec.tau}")
    xi = _decode_element(d["xi"], n, "decomposition.xi") if "xi" in d else None
    return dec, xi


def algebra_from_dict(data: dict) -> LoadedAlgebra:
    """Accepts either "brackets" or a "salamon" string (with optional "bindings")."""
    if not isinstance(data, dict):
        raise SasakiError("Algebra JSON must be an object")
    try:
        return _algebra_from_dict(data)
    except (TypeError, KeyError, IndexError) as e:
        raise SasakiError(f"Malformed algebra JSON: {e}") from e


def _algebra_from_dict(data: dict) -> LoadedAlgebra:
    if "salamon" in data:
        L = parse_salamon(data["salamon"], data.get("bindings"))
        if "dim" in data and int(data["dim"]) != L.dim:
            raise SasakiError(f"dim {data['dim']} does not match the Salamon tuple ({L.dim})")
    elif "brackets" in data and "dim" in data:
        L = decode_brackets(int(data["dim"]), data["brackets"])
    else:
        raise SasakiError("Algebra needs \"dim\" and \"brackets\", or \"salamon\"")
    M = MetricLieAlgebra(L, decode_matrix(data["metric"])) if "metric" in data else None
    xi = _decode_element(data["xi"], L.dim, "xi") if "xi" in data else None
    structure = None
    if M is not None and xi is not None and "phi" in data:
        structure = AlmostContactData(M, decode_matrix(data["phi"]), xi)
    decomposition = None
    if M is not None and "decomposition" in data:
        decomposition, dec_xi = _decode_decomposition(M, data["decomposition"])
        if dec_xi is not None:
            if xi is not None and xi != dec_xi:
                raise SasakiError("decomposition.xi disagrees with xi")
            xi = dec_xi
    return LoadedAlgebra(L, M, structure, decomposition, xi)


# --- seeds -------------------------------------------------------------------

def seed_to_dict(seed: KahlerSeed) -> dict:
    return {
        "dim": seed.dim,
        "brackets": encode_brackets(seed.M.L),
        "metric": encode_matrix(seed.M.g),
        "J": encode_matrix(seed.J),
        "omega": encode_form(seed.omega),
        "D": encode_matrix(seed.D),
        "h": format_scalar(seed.h),
        "tau": format_scalar(seed.tau),
    }


def seed_from_dict(data: dict) -> KahlerSeed:
    try:
        dim = int(data["dim"])
        M = MetricLieAlgebra(decode_brackets(dim, data.get("brackets", [])), decode_matrix(data["metric"]))
        return KahlerSeed(
            M,
            decode_matrix(data["J"]),
            decode_form(data["omega"], dim),
            decode_matrix(data["D"]),
            to_scalar(data["h"]),
            to_scalar(data["tau"]),
        )
    except KeyError as e:
        raise SasakiError(f"Seed is missing field {e.args[0]!r}") from e


# --- reports -----------------------------------------------------------------

def reports_to_dict(reports: Iterable, timing: bool = False) -> dict:
    reports = list(reports)
    return {
        "schema": SCHEMA_VERSION,
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict(timing=timing) for r in reports],
    }


def write_reports(path: Path, reports: Iterable, timing: bool = False) -> None:
    path = Path(path)
    path.write_text(dumps(reports_to_dict(reports, timing)) + "\n", encoding="utf-8")
    logger.info("Wrote report file %s", path)


# In-memory cache keyed by (path, mtime)
_cache: dict | None = None
_cache_key: tuple[str, float] | None = None
_cache_lock = threading.Lock()


def load_reports(path: Path) -> dict | None:
    """Report file contents, or None if it is missing, unreadable or of another schema."""
    global _cache, _cache_key
    path = Path(path)
    try:
        mtime = path.stat().st_mtime
    except OSError:
        return None
    key = (str(path), mtime)
    with _cache_lock:
        if _cache_key == key and _cache is not None:
            return _cache
        try:
            data = _load_json(path)
        except (*_json_errors, OSError) as e:
            logger.warning("Could not read report file %s: %s", path, e)
            return None
        if data.get("schema") != SCHEMA_VERSION:
            logger.warning("Report file %s has schema %r, expected %d", path, data.get("schema"), SCHEMA_VERSION)
            return None
        _cache, _cache_key = data, key
        return data
