"""
Catalog of the Sasaki Lie algebras of the classification and the harness that
re-verifies every claim about them.

Entries come in two kinds:
- "printed": the structure is taken verbatim from the bracket list, metric
  line and fundamental form (the Einstein example and its isometric twin);
- "construction": the structure is construct_sasaki(seed) for the Kähler
  seed the entry reduces to; the printed bracket list is compared against it
  and any disagreement is reported as a finding, never substituted.

Settings are resolved as: explicit arguments > environment variables >
config.py > defaults.
"""

from __future__ import annotations

import fnmatch
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

from exact_linalg import ONE, ZERO, Matrix, Vector, format_scalar, to_scalar, unit
from lie_algebra import Form, LieAlgebra, jacobi_check
from metric_geometry import MetricLieAlgebra, check_connection, curvature, levi_civita
from salamon_notation import parse_form, parse_salamon
from contact_metric import (
    AlmostContactData,
    check_sasaki,
    fundamental_form,
    phi_from_fundamental_form,
)
from standard_decomposition import (
    StandardDecomposition,
    check_rank_one_sasaki,
    check_standard,
    check_z_standard,
    no_pseudo_iwasawa_audit,
    scan_z_standard,
    symmetric_isometrization,
)
from kahler_reduction import (
    KahlerSeed,
    construct_sasaki,
    extract_reduction,
    flip_hermitian_sign,
)
from sasaki_errors import CharacterizationMismatch, SasakiError

logger = logging.getLogger(__name__)

_BASE = Path(__file__).resolve().parent

DEFAULT_LAMBDA_SAMPLES = "0,1,-1,1/2,2"
DEFAULT_SCAN_HEIGHT = 3
DEFAULT_SCAN_TERMS = 2
DEFAULT_MAX_WORKERS = 4
DEFAULT_REPORT_CACHE = _BASE / "sasaki_report_cache.json"
DEFAULT_LOG_LEVEL = "WARNING"


# --- settings ----------------------------------------------------------------

@dataclass(frozen=True)
class Settings:
    lambda_samples: tuple[Fraction, ...]
    scan_height: int
    scan_terms: int
    max_workers: int
    report_cache: Path
    log_level: str


def parse_lambda_samples(value) -> tuple[Fraction, ...]:
    """Accept "0,1,-1/2" text or any iterable of scalars."""
    if isinstance(value, str):
        value = [part for part in value.split(",") if part.strip()]
    return tuple(to_scalar(v) for v in value)


def _configured(name: str, default):
    value = os.environ.get(name)
    if value is not None:
        return value
    try:
        import config
    except ImportError:
        return default
    return getattr(config, name, default)


def load_settings(**overrides) -> Settings:
    """
    Resolve the harness settings.

    Args:
        overrides: any Settings field; None values fall through to the
            environment (SASAKI_<FIELD>), then config.py, then defaults.
    """
    def pick(key, default):
        value = overrides.get(key)
        return value if value is not None else _configured(f"SASAKI_{key.upper()}", default)

    return Settings(
        lambda_samples=parse_lambda_samples(pick("lambda_samples", DEFAULT_LAMBDA_SAMPLES)),
        scan_height=int(pick("scan_height", DEFAULT_SCAN_HEIGHT)),
        scan_terms=int(pick("scan_terms", DEFAULT_SCAN_TERMS)),
        max_workers=max(1, int(pick("max_workers", DEFAULT_MAX_WORKERS))),
        report_cache=Path(pick("report_cache", DEFAULT_REPORT_CACHE)),
        log_level=str(pick("log_level", DEFAULT_LOG_LEVEL)).upper(),
    )


# --- seeds -------------------------------------------------------------------

def hermitian_seed(signs: Sequence[int], D: Matrix, h, tau) -> KahlerSeed:
    """Abelian ǧ = R^m with g = diag(signs), J pairing (e1,e2), (e3,e4), ... and ω = g(·,J·)."""
    m = len(signs)
    rows = [[ZERO] * m for _ in range(m)]
    for k in range(0, m, 2):
        rows[k + 1][k] = ONE     # J e_k = e_{k+1}
        rows[k][k + 1] = -ONE    # J e_{k+1} = -e_k
    J = Matrix(rows, m)
    M = MetricLieAlgebra(LieAlgebra.abelian(m), Matrix.diagonal(signs))
    return KahlerSeed(M, J, Form.from_matrix(M.g @ J), D, to_scalar(h), to_scalar(tau))


DEFINITE_2 = (1, 1)
DEFINITE_4 = (1, 1, 1, 1)
NEUTRAL_4 = (1, 1, -1, -1)


def _family_D(rows: Sequence[Sequence[tuple[Fraction, int]]], lam: Fraction) -> Matrix:
    """Entries given as (constant, multiple of λ)."""
    return Matrix([[c + k * lam for c, k in row] for row in rows], len(rows))


# Ď of the λ-families; each entry is (constant part, coefficient of λ).
_ROW9 = (
    ((Fraction("1/2"), 0), (ZERO, 2), (Fraction("-1/2"), 0), (ZERO, -1)),
    ((ZERO, -2), (Fraction("1/2"), 0), (ZERO, 1), (Fraction("-1/2"), 0)),
    ((Fraction("1/2"), 0), (ZERO, 1), (Fraction("-1/2"), 0), (ZERO, 0)),
    ((ZERO, -1), (Fraction("1/2"), 0), (ZERO, 0), (Fraction("-1/2"), 0)),
)
_ROW10 = (
    ((Fraction("1/2"), 0), (ZERO, 2), (Fraction("-3/2"), 0), (ZERO, -1)),
    ((ZERO, -2), (Fraction("1/2"), 0), (ZERO, 1), (Fraction("-3/2"), 0)),
    ((Fraction("-1/2"), 0), (ZERO, 1), (Fraction("-1/2"), 0), (ZERO, 0)),
    ((ZERO, -1), (Fraction("-1/2"), 0), (ZERO, 0), (Fraction("-1/2"), 0)),
)
_ROW11 = (
    ((Fraction("3/2"), 0), (ZERO, 2), (Fraction("1/2"), 0), (ZERO, -1)),
    ((ZERO, -2), (Fraction("3/2"), 0), (ZERO, 1), (Fraction("1/2"), 0)),
    ((Fraction("3/2"), 0), (ZERO, 1), (Fraction("1/2"), 0), (ZERO, 0)),
    ((ZERO, -1), (Fraction("3/2"), 0), (ZERO, 0), (Fraction("1/2"), 0)),
)


def _fixed_seed(signs, D: Matrix, h) -> Callable[[Fraction, Fraction | None], KahlerSeed]:
    return lambda tau, lam: hermitian_seed(signs, D, h, tau)


def _family_seed(signs, rows, h) -> Callable[[Fraction, Fraction | None], KahlerSeed]:
    return lambda tau, lam: hermitian_seed(signs, _family_D(rows, lam), h, tau)


# --- entries -----------------------------------------------------------------

@dataclass(frozen=True)
class ExpectedReduction:
    """Reduction data an entry must reproduce (vectors and Ď in their printed coordinates)."""

    b: tuple[int, ...]
    D: tuple[tuple[int, ...], ...]
    h: int
    tau: int


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str                                   # "printed" or "construction"
    salamon: str
    metric_line: tuple[str, ...]                # "s", "-s", "τ" or an integer per basis vector
    xi_index: int                               # 1-based
    phi: str
    ideal: tuple[int, ...]                      # 1-based
    e0_index: int
    lambda_family: bool = False
    einstein: int | None = None                 # ric = einstein * g
    expected: ExpectedReduction | None = None
    scan_witness: tuple[int, ...] | None = None
    isometrization: tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...], str] | None = None
    seed: Callable[[Fraction, Fraction | None], KahlerSeed] | None = field(
        default=None, repr=False, compare=False
    )

    @property
    def dim(self) -> int:
        return len(self.metric_line)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "salamon": self.salamon,
            "metric_line": list(self.metric_line),
            "xi": self.xi_index,
            "phi": self.phi,
            "ideal": list(self.ideal),
            "e0": self.e0_index,
            "lambda_family": self.lambda_family,
            "einstein": self.einstein,
        }


EX43 = "(0,-2e^{12}-2e^{34},-3e^{45}-e^{13}+3e^{24},3e^{35}-3e^{23}-e^{14},2e^{12}+2e^{34})"
EX43P = "(0,-2e^{12}-2e^{34},-e^{13},-e^{14},2e^{12}+2e^{34})"

_DIM5_LINE = ("s", "s", "τ", "1", "τ")
_DIM5_PHI = "-e^{12}-τe^{35}"
_DEF_LINE = ("s", "s", "s", "s", "τ", "1", "τ")
_NEU_LINE = ("s", "s", "-s", "-s", "τ", "1", "τ")
_DEF_PHI = "-e^{12}-e^{34}-τe^{57}"
_NEU_PHI = "-e^{12}+e^{34}-τe^{57}"


def _dim5(idx: int, salamon: str, D: Matrix, h: int) -> CatalogEntry:
    return CatalogEntry(
        id=f"dim5.{idx}",
        kind="construction",
        salamon=salamon,
        metric_line=_DIM5_LINE,
        xi_index=4,
        phi=_DIM5_PHI,
        ideal=(1, 2, 3, 4),
        e0_index=5,
        seed=_fixed_seed(DEFINITE_2, D, h),
    )


def _row(idx: int, salamon: str, neutral: bool, seed, family: bool = False) -> CatalogEntry:
    return CatalogEntry(
        id=f"table1.{idx}",
        kind="construction",
        salamon=salamon,
        metric_line=_NEU_LINE if neutral else _DEF_LINE,
        xi_index=6,
        phi=_NEU_PHI if neutral else _DEF_PHI,
        ideal=(1, 2, 3, 4, 5, 6),
        e0_index=7,
        lambda_family=family,
        seed=seed,
    )


def _build_catalog() -> tuple[CatalogEntry, ...]:
    Z2, I2 = Matrix.zeros(2), Matrix.identity(2)
    Z4, I4 = Matrix.zeros(4), Matrix.identity(4)
    P34 = Matrix.diagonal([0, 0, 1, 1])
    entries = [
        CatalogEntry(
            id="ex4.3",
            kind="printed",
            salamon=EX43,
            metric_line=("-1", "-1", "-1", "-1", "1"),
            xi_index=5,
            phi="e^{12}+e^{34}",
            ideal=(2, 3, 4, 5),
            e0_index=1,
            einstein=4,
            isometrization=(((1, 0, 0, 0, 0), (0, 1, 0, 0, -1), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0)),
                            ((0, 0, 0, 0, 1),), "ex4.3p"),
        ),
        CatalogEntry(
            id="ex4.3p",
            kind="printed",
            salamon=EX43P,
            metric_line=("-1", "-1", "-1", "-1", "1"),
            xi_index=5,
            phi="e^{12}+e^{34}",
            ideal=(2, 3, 4, 5),
            e0_index=1,
            einstein=4,
            expected=ExpectedReduction(b=(0, -1, 0, 0, 0), D=((1, 0), (0, 1)), h=2, tau=-1),
            scan_witness=(0, 1, 0, 0, 0),
        ),
        _dim5(1, "(0,0,0,-2e^{12}-2τe^{35},0)", Z2, 0),
        _dim5(2, "(0,0,2τe^{12}+2e^{35},-2e^{12}-2τe^{35},0)", Z2, 2),
        _dim5(3, "(e^{15},e^{25},2τe^{12}+2e^{35},-2e^{12}-2τe^{35},0)", I2, 2),
        _row(1, "(0,0,0,0,0,-2e^{12}-2e^{34}-2τe^{57},0)", False, _fixed_seed(DEFINITE_4, Z4, 0)),
        _row(2, "(0,0,0,0,2τe^{12}+2τe^{34}+2e^{57},-2e^{12}-2e^{34}-2τe^{57},0)", False,
             _fixed_seed(DEFINITE_4, Z4, 2)),
        _row(3, "(0,0,e^{37},e^{47},2τe^{12}+2τe^{34}+2e^{57},-2e^{12}-2e^{34}-2τe^{57},0)", False,
             _fixed_seed(DEFINITE_4, P34, 2)),
        _row(4, "(e^{17},e^{27},e^{37},e^{47},2τe^{12}+2τe^{34}+2e^{57},-2e^{12}-2e^{34}-2τe^{57},0)",
             False, _fixed_seed(DEFINITE_4, I4, 2)),
        _row(5, "(0,0,0,0,0,-2e^{12}+2e^{34}-2τe^{57},0)", True, _fixed_seed(NEUTRAL_4, Z4, 0)),
        _row(6, "(0,0,0,0,2τe^{12}-2τe^{34}+2e^{57},-2e^{12}+2e^{34}-2τe^{57},0)", True,
             _fixed_seed(NEUTRAL_4, Z4, 2)),
        _row(7, "(0,0,e^{37},e^{47},2τe^{12}-2τe^{34}+2e^{57},-2e^{12}+2e^{34}-2τe^{57},0)", True,
             _fixed_seed(NEUTRAL_4, P34, 2)),
        _row(8, "(e^{17},e^{27},e^{37},e^{47},2τe^{12}-2τe^{34}+2e^{57},-2e^{12}+2e^{34}-2τe^{57},0)",
             True, _fixed_seed(NEUTRAL_4, I4, 2)),
        _row(9, "(1/2e^{17}+2λe^{27}-1/2e^{37}-λe^{47},-2λe^{17}+1/2e^{27}+λe^{37}-1/2e^{47},"
                "1/2e^{17}+λe^{27}-1/2e^{37},-λe^{17}+1/2e^{27}-1/2e^{47},"
                "-τe^{12}+τe^{14}-τe^{23}-τe^{34},-2e^{12}+2e^{34}-2τe^{57},0)",
             True, _family_seed(NEUTRAL_4, _ROW9, 0), family=True),
        _row(10, "(1/2e^{17}+2λe^{27}-3/2e^{37}-λe^{47},-2λe^{17}+1/2e^{27}+λe^{37}-3/2e^{47},"
                 "-1/2e^{17}+λe^{27}-1/2e^{37},-λe^{17}-1/2e^{27}-1/2e^{47},"
                 "-τe^{12}+τe^{14}-τe^{23}-τe^{34}+2e^{57},-2e^{12}+2e^{34}-2τe^{57},0)",
             True, _family_seed(NEUTRAL_4, _ROW10, 2), family=True),
        _row(11, "(3/2e^{17}+2λe^{27}+1/2e^{37}-λe^{47},-2λe^{17}+3/2e^{27}+λe^{37}+1/2e^{47},"
                 "3/2e^{17}+λe^{27}+1/2e^{37},-λe^{17}+3/2e^{27}+1/2e^{47},"
                 "-3τe^{12}+3τe^{14}-τe^{23}+τe^{34}+2e^{57},-2e^{12}+2e^{34}-2τe^{57},0)",
             True, _family_seed(NEUTRAL_4, _ROW11, 2), family=True),
    ]
    return tuple(entries)


_CATALOG = _build_catalog()


def catalog() -> list[CatalogEntry]:
    return list(_CATALOG)


def get_entry(entry_id: str) -> CatalogEntry:
    for entry in _CATALOG:
        if entry.id == entry_id:
            return entry
    raise KeyError(f"No catalog entry {entry_id!r}")


# --- variants ----------------------------------------------------------------

@dataclass(frozen=True)
class Variant:
    tau: Fraction | None = None
    sign: int | None = None
    lam: Fraction | None = None

    def bindings(self) -> dict[str, Fraction]:
        out = {}
        if self.tau is not None:
            out["τ"] = self.tau
        if self.lam is not None:
            out["λ"] = self.lam
        return out

    def to_dict(self) -> dict:
        return {
            "tau": None if self.tau is None else format_scalar(self.tau),
            "sign": None if self.sign is None else ("+" if self.sign > 0 else "-"),
            "lambda": None if self.lam is None else format_scalar(self.lam),
        }

    def label(self) -> str:
        parts = [f"{k}={v}" for k, v in self.to_dict().items() if v is not None]
        return ",".join(parts) or "as printed"


def variants(entry: CatalogEntry, lambda_samples: Iterable[Fraction]) -> list[Variant]:
    if entry.kind == "printed":
        return [Variant()]
    lams = list(lambda_samples) if entry.lambda_family else [None]
    return [
        Variant(tau=Fraction(tau), sign=sign, lam=lam)
        for tau in (1, -1)
        for sign in (1, -1)
        for lam in lams
    ]


def metric_from_line(line: Sequence[str], variant: Variant) -> Matrix:
    values = []
    for token in line:
        if token == "s":
            values.append(Fraction(variant.sign))
        elif token == "-s":
            values.append(-Fraction(variant.sign))
        elif token == "τ":
            values.append(variant.tau)
        else:
            values.append(to_scalar(token))
    return Matrix.diagonal(values)


# --- reports -----------------------------------------------------------------

CHECK_NAMES = (
    "jacobi",
    "nilpotent_ideal",
    "acms",
    "normal",
    "contact",
    "nabla_phi",
    "reeb_nabla_xi",
    "reeb_killing",
    "reeb_contact",
    "reeb_curvature_xi",
    "reeb_ricci_xi",
    "connection",
    "rank_one",
    "z_standard",
    "z_witness",
    "reduction_match",
    "sasaki_quotient",
    "roundtrip",
    "not_pseudo_iwasawa",
    "einstein",
    "isometrization",
)


@dataclass
class Report:
    entry_id: str
    variant: Variant
    checks: dict[str, bool | None]
    printed_jacobi: bool
    printed_matches_construction: bool | None
    findings: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "entry": self.entry_id,
            "variant": self.variant.to_dict(),
            "passed": self.passed,
            "checks": {name: self.checks.get(name) for name in CHECK_NAMES},
            "printed_jacobi": self.printed_jacobi,
            "printed_matches_construction": self.printed_matches_construction,
            "findings": list(self.findings),
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 4)
        return out


def _vec(values: Sequence[int]) -> Vector:
    return tuple(Fraction(v) for v in values)


def _stage(checks: dict, name: str, fn: Callable[[], bool]):
    """Run one check; a domain error marks it failed, a disagreement between characterizations propagates."""
    try:
        checks[name] = bool(fn())
    except CharacterizationMismatch:
        raise
    except SasakiError as e:
        logger.warning("Check %s raised %s: %s", name, type(e).__name__, e)
        checks[name] = False
    return checks[name]


def _structure_checks(checks: dict, A: AlmostContactData, einstein: int | None) -> None:
    M = A.M
    checks["jacobi"] = bool(jacobi_check(M.L))
    report = check_sasaki(A)
    checks["acms"] = report.is_acms
    checks["normal"] = report.normal
    checks["contact"] = report.contact
    checks["nabla_phi"] = report.nabla_phi_identity
    cons = report.consequences
    for key, attr in (
        ("reeb_nabla_xi", "nabla_xi"),
        ("reeb_killing", "killing"),
        ("reeb_contact", "contact"),
        ("reeb_curvature_xi", "curvature_xi"),
        ("reeb_ricci_xi", "ricci_xi"),
    ):
        checks[key] = getattr(cons, attr) if cons is not None else False
    C = levi_civita(M)
    checks["connection"] = check_connection(M, C).ok
    if einstein is not None:
        checks["einstein"] = curvature(M, C).ric == M.g * einstein


def _reduction_checks(checks: dict, dec: StandardDecomposition, xi: Vector, expect) -> None:
    """Rank-one, z-standard, reduction and roundtrip stages; expect(red) decides the match."""
    if not _stage(checks, "nilpotent_ideal", lambda: check_standard(dec)):
        return
    holder = {}

    def rank_one():
        holder["rank_one"] = check_rank_one_sasaki(dec, xi)
        return holder["rank_one"].ok

    if not _stage(checks, "rank_one", rank_one):
        return
    if not _stage(checks, "z_standard", lambda: check_z_standard(dec, xi, holder["rank_one"])):
        return

    def reduce():
        holder["red"] = extract_reduction(dec, xi, holder["rank_one"])
        return holder["red"].ok and expect(holder["red"])

    if not _stage(checks, "reduction_match", reduce):
        return
    red = holder["red"]
    _stage(checks, "sasaki_quotient", lambda: check_sasaki(red.sasaki_quotient).verdict)

    def roundtrip():
        rebuilt = construct_sasaki(red.seed)
        again = extract_reduction(rebuilt.decomposition, rebuilt.xi)
        return again.seed == red.seed

    _stage(checks, "roundtrip", roundtrip)


def _printed_structure(entry: CatalogEntry, variant: Variant) -> tuple[LieAlgebra, Matrix]:
    L = parse_salamon(entry.salamon, variant.bindings())
    return L, metric_from_line(entry.metric_line, variant)


def _verify_printed(entry: CatalogEntry, variant: Variant, settings: Settings, report: Report) -> None:
    checks = report.checks
    L, g = _printed_structure(entry, variant)
    report.printed_jacobi = bool(jacobi_check(L))
    M = MetricLieAlgebra(L, g)
    phi = phi_from_fundamental_form(M, parse_form(entry.phi, entry.dim))
    A = AlmostContactData(M, phi, unit(entry.dim, entry.xi_index - 1))
    _structure_checks(checks, A, entry.einstein)
    dec = StandardDecomposition.from_indices(M, [i - 1 for i in entry.ideal], [entry.e0_index - 1])
    checks["not_pseudo_iwasawa"] = no_pseudo_iwasawa_audit(A, dec)

    if entry.expected is not None:
        exp = entry.expected

        def matches(red) -> bool:
            return (
                red.b == _vec(exp.b)
                and red.h == exp.h
                and red.tau == exp.tau
                and red.seed.D == Matrix(exp.D)
            )

        _reduction_checks(checks, dec, A.xi, matches)
    else:
        try:
            check_standard(dec)
            checks["nilpotent_ideal"] = True
        except SasakiError as e:
            report.findings.append(
                f"printed split {list(entry.ideal)} ⋊ [{entry.e0_index}] is not a standard "
                f"decomposition: {e}"
            )

    if entry.scan_witness is not None:
        witnesses = scan_z_standard(M, settings.scan_height, settings.scan_terms)
        checks["z_witness"] = _vec(entry.scan_witness) in witnesses

    if entry.isometrization is not None:
        ideal, abelian, target_id = entry.isometrization
        split = StandardDecomposition(M, tuple(map(_vec, ideal)), tuple(map(_vec, abelian)))
        target = get_entry(target_id)
        L_t, g_t = _printed_structure(target, variant)

        def isometric() -> bool:
            return symmetric_isometrization(split) == MetricLieAlgebra(L_t, g_t)

        _stage(checks, "isometrization", isometric)


def seed_for(entry: CatalogEntry, variant: Variant) -> KahlerSeed:
    seed = entry.seed(variant.tau, variant.lam)
    return flip_hermitian_sign(seed) if variant.sign < 0 else seed


def _verify_construction(entry: CatalogEntry, variant: Variant, report: Report) -> None:
    checks = report.checks
    seed = seed_for(entry, variant)
    con = construct_sasaki(seed)
    A = con.structure
    _structure_checks(checks, A, entry.einstein)
    checks["not_pseudo_iwasawa"] = no_pseudo_iwasawa_audit(A, con.decomposition)
    _reduction_checks(checks, con.decomposition, con.xi, lambda red: red.seed == seed)

    printed, g_printed = _printed_structure(entry, variant)
    report.printed_jacobi = bool(jacobi_check(printed))
    report.printed_matches_construction = printed == con.M.L
    if not report.printed_jacobi:
        report.findings.append("printed bracket list does not satisfy the Jacobi identity")
    if not report.printed_matches_construction:
        report.findings.append("printed bracket list differs from the construction of the seed")
    if g_printed != con.M.g:
        report.findings.append("printed metric line differs from the constructed metric")
    if parse_form(entry.phi, entry.dim, variant.bindings()) != fundamental_form(A):
        report.findings.append("printed fundamental form differs from g(·,φ·)")


def verify_variant(entry: CatalogEntry, variant: Variant, settings: Settings | None = None) -> Report:
    settings = settings or load_settings()
    start = time.perf_counter()
    report = Report(entry.id, variant, {name: None for name in CHECK_NAMES}, True, None)
    if entry.kind == "printed":
        _verify_printed(entry, variant, settings, report)
    else:
        _verify_construction(entry, variant, report)
    report.wall_time = time.perf_counter() - start
    for finding in report.findings:
        logger.warning("%s [%s]: %s", entry.id, variant.label(), finding)
    failed = [k for k, v in report.checks.items() if v is False]
    if failed:
        logger.warning("%s [%s] failed: %s", entry.id, variant.label(), ", ".join(failed))
    else:
        logger.debug("%s [%s] passed in %.3fs", entry.id, variant.label(), report.wall_time)
    return report


def select(pattern: str = "*") -> list[CatalogEntry]:
    return [e for e in _CATALOG if fnmatch.fnmatchcase(e.id, pattern)]


def verify_all(
    pattern: str = "*",
    lambda_samples: Iterable | None = None,
    settings: Settings | None = None,
) -> list[Report]:
    """
    Verify every variant of the entries whose id matches the glob.

    Args:
        pattern: fnmatch glob on entry ids, e.g. "dim5.*"
        lambda_samples: λ values for the one-parameter rows (settings default)

    Returns:
        Reports in catalog order, variants in (τ, sign, λ) order.
    """
    settings = settings or load_settings()
    samples = (
        parse_lambda_samples(lambda_samples) if lambda_samples is not None else settings.lambda_samples
    )
    tasks = [(entry, v) for entry in select(pattern) for v in variants(entry, samples)]
    logger.info("Verifying %d variants with %d workers", len(tasks), settings.max_workers)
    with ThreadPoolExecutor(max_workers=settings.max_workers) as executor:
        return list(executor.map(lambda task: verify_variant(task[0], task[1], settings), tasks))


def all_passed(reports: Iterable[Report]) -> bool:
    return all(r.passed for r in reports)
