"""
Command-line interface for the Sasaki Lie algebra toolkit.

    python sasaki_cli.py parse algebra.txt --bind tau=1
    python sasaki_cli.py check algebra.json --sasaki
    python sasaki_cli.py decompose algebra.json --ideal 2,3,4,5 --e0 1 --xi 5
    python sasaki_cli.py reduce algebra.json --ideal 2,3,4,5 --e0 1
    python sasaki_cli.py construct seed.json
    python sasaki_cli.py catalog verify --filter "dim5.*" --lambda 0,1/2

Inputs are either Salamon text or JSON (see sasaki_data). A Salamon file can
be given a metric and structure with --metric, --xi and --phi. Exit status
is 0 when every requested check passes, 1 when a check fails and 2 on invalid
input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from exact_linalg import Matrix, Vector, format_scalar, to_scalar, unit
from lie_algebra import jacobi_check, is_nilpotent, is_solvable
from metric_geometry import MetricLieAlgebra
from salamon_notation import parse_form, parse_salamon, print_salamon
from contact_metric import AlmostContactData, check_acms, check_sasaki, phi_from_fundamental_form
from standard_decomposition import (
    StandardDecomposition,
    ad_is_symmetric_on_factor,
    check_rank_one_sasaki,
    check_standard,
    check_z_standard,
    scan_z_standard,
    solve_xi,
)
from kahler_reduction import construct_sasaki, extract_reduction
from sasaki_catalog import all_passed, catalog, load_settings, select, verify_all
from sasaki_data import (
    LoadedAlgebra,
    algebra_from_dict,
    algebra_to_dict,
    dumps,
    encode_vector,
    loads,
    reports_to_dict,
    seed_from_dict,
    seed_to_dict,
    write_reports,
)
from sasaki_errors import SasakiError

logger = logging.getLogger(__name__)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SasakiError(f"Cannot read {path}: {e}") from e


def _bindings(pairs: list[str] | None) -> dict[str, str]:
    out = {}
    for pair in pairs or []:
        name, sep, value = pair.partition("=")
        if not sep or not name.strip():
            raise SasakiError(f"--bind expects NAME=VALUE, got {pair!r}")
        out[name.strip()] = value.strip()
    return out


def _indices(text: str | None) -> list[int]:
    """Comma-separated 1-based basis indices to 0-based."""
    if not text:
        return []
    try:
        return [int(part) - 1 for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise SasakiError(f"Bad index list {text!r}") from e


def _basis_vector(dim: int, text: str, option: str) -> Vector:
    try:
        i = int(text) - 1
    except ValueError as e:
        raise SasakiError(f"{option} expects a 1-based index, got {text!r}") from e
    if not 0 <= i < dim:
        raise SasakiError(f"{option} index {text} outside 1..{dim}")
    return unit(dim, i)


def _load(args) -> LoadedAlgebra:
    text = _read_text(args.file)
    bindings = _bindings(getattr(args, "bind", None))
    if text.lstrip().startswith("{"):
        data = loads(text)
        if bindings and "salamon" in data:
            data = {**data, "bindings": {**data.get("bindings", {}), **bindings}}
        loaded = algebra_from_dict(data)
    else:
        loaded = LoadedAlgebra(parse_salamon(text.strip(), bindings), None, None, None)
    L, M, structure, dec, loaded_xi = loaded
    metric = getattr(args, "metric", None)
    if metric:
        M = MetricLieAlgebra(L, Matrix.diagonal([to_scalar(x) for x in metric.split(",")]))
    xi = getattr(args, "xi", None)
    phi = getattr(args, "phi", None)
    if xi:
        loaded_xi = _basis_vector(L.dim, xi, "--xi")
    if M is not None and xi and phi:
        Phi = parse_form(phi, L.dim, bindings)
        structure = AlmostContactData(M, phi_from_fundamental_form(M, Phi), loaded_xi)
    ideal, e0 = getattr(args, "ideal", None), getattr(args, "e0", None)
    if M is not None and ideal and e0:
        idx = _indices(ideal) + _indices(e0)
        if any(not 0 <= i < L.dim for i in idx):
            raise SasakiError(f"--ideal/--e0 indices must lie in 1..{L.dim}")
        dec = StandardDecomposition.from_indices(M, _indices(ideal), _indices(e0))
    if structure is not None and structure.M != M:
        structure = AlmostContactData(M, structure.phi, structure.xi)
    if dec is not None and dec.M != M:
        dec = StandardDecomposition(M, dec.ideal, dec.abelian)
    if loaded_xi is None and structure is not None:
        loaded_xi = structure.xi
    return LoadedAlgebra(L, M, structure, dec, loaded_xi)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(dumps(payload))
    else:
        for line in text_lines:
            print(line)


# --- subcommands -------------------------------------------------------------

def cmd_parse(args) -> int:
    L = _load(args).L
    jac = jacobi_check(L)
    payload = {**algebra_to_dict(L), "salamon": print_salamon(L), "jacobi": jac.ok}
    lines = [print_salamon(L), f"dim {L.dim}, Jacobi {'holds' if jac else 'fails'}"]
    if not jac:
        i, j, k = jac.triple
        lines.append(f"  first failing triple (e{i + 1}, e{j + 1}, e{k + 1})")
    else:
        nil = is_nilpotent(L)
        lines.append(f"nilpotent: {nil.nilpotent}" + (f" (step {nil.step})" if nil.nilpotent else ""))
        lines.append(f"solvable: {is_solvable(L)}")
    _emit(args, payload, lines)
    return 0 if jac else 1


def cmd_check(args) -> int:
    loaded = _load(args)
    jac = jacobi_check(loaded.L)
    if args.mode == "jacobi":
        _emit(args, {"jacobi": jac.ok}, [f"Jacobi: {jac.ok}"])
        return 0 if jac else 1
    if loaded.structure is None:
        raise SasakiError("check needs a metric and a structure (JSON fields or --metric/--xi/--phi)")
    if args.mode == "acms":
        res = check_acms(loaded.structure)
        _emit(args, {"acms": res.ok, "failed": res.failed},
              [f"almost contact metric: {res.ok}" + (f" (fails {res.failed})" if res.failed else "")])
        return 0 if res else 1
    report = check_sasaki(loaded.structure)
    payload = {"jacobi": jac.ok, **report.to_dict()}
    lines = [
        f"Jacobi: {jac.ok}",
        f"almost contact metric: {report.is_acms}" + (f" (fails {report.acms_failure})" if report.acms_failure else ""),
        f"normal: {report.normal}",
        f"contact: {report.contact}",
        f"nabla-phi identity: {report.nabla_phi_identity}",
        f"center inside the Reeb line: {report.center_in_reeb_line}",
        f"Sasaki: {report.verdict}",
    ]
    _emit(args, payload, lines)
    return 0 if (jac and report.verdict) else 1


def cmd_decompose(args) -> int:
    loaded = _load(args)
    dec = loaded.decomposition
    if dec is None:
        raise SasakiError("decompose needs a metric and --ideal/--e0 (or a JSON decomposition)")
    try:
        check_standard(dec)
    except SasakiError as e:
        _emit(args, {"standard": False, "reason": str(e)}, [f"standard decomposition: False ({e})"])
        return 1
    settings = load_settings(scan_height=args.height, scan_terms=args.terms)
    payload: dict = {"standard": True, "pseudo_iwasawa": ad_is_symmetric_on_factor(dec)}
    lines = ["standard decomposition: True", f"pseudo-Iwasawa: {payload['pseudo_iwasawa']}"]
    ok = True
    if dec.rank == 1:
        payload["tau"] = format_scalar(dec.tau)
        lines.append(f"tau: {dec.tau}")
        xi = loaded.xi
        if xi is not None:
            r = check_rank_one_sasaki(dec, xi)
            payload["rank_one"] = r.equations
            payload["b"] = encode_vector(r.b)
            payload["z_standard"] = check_z_standard(dec, xi, r)
            lines.extend(f"  {name}: {value}" for name, value in r.equations.items())
            lines.append(f"b = -φ(e0): {[str(x) for x in r.b]}")
            lines.append(f"z-standard: {payload['z_standard']}")
            ok = r.ok
        if args.solve_xi:
            found = solve_xi(dec, settings.scan_height, settings.scan_terms)
            payload["xi_candidates"] = [encode_vector(v) for v in found]
            lines.append(f"Reeb vectors found: {[[str(x) for x in v] for v in found]}")
    if args.scan:
        witnesses = scan_z_standard(dec.M, settings.scan_height, settings.scan_terms)
        payload["z_witnesses"] = [encode_vector(v) for v in witnesses]
        lines.append(f"z-standard witnesses: {[[str(x) for x in v] for v in witnesses]}")
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_reduce(args) -> int:
    loaded = _load(args)
    if loaded.structure is None or loaded.decomposition is None:
        raise SasakiError("reduce needs a structure and a rank-one decomposition")
    red = extract_reduction(loaded.decomposition, loaded.structure.xi)
    quotient = red.sasaki_quotient
    payload = {
        "b": encode_vector(red.b),
        "xi": encode_vector(red.xi),
        "h": format_scalar(red.h),
        "tau": format_scalar(red.tau),
        "seed": seed_to_dict(red.seed),
        "checks": red.checks,
        "sasaki_quotient": algebra_to_dict(quotient.M.L, quotient.M, quotient),
    }
    lines = [
        f"b: {[str(x) for x in red.b]}",
        f"h: {red.h}, tau: {red.tau}",
        f"Kähler quotient: {print_salamon(red.seed.M.L)}",
        f"D: {[[str(x) for x in red.seed.D.row(i)] for i in range(red.seed.D.rows)]}",
        f"Sasaki quotient by b: {print_salamon(quotient.M.L)}",
    ]
    lines.extend(f"  {name}: {value}" for name, value in red.checks.items())
    _emit(args, payload, lines)
    return 0 if red.ok else 1


def cmd_construct(args) -> int:
    seed = seed_from_dict(loads(_read_text(args.file)))
    con = construct_sasaki(seed)
    report = check_sasaki(con.structure)
    payload = {
        **algebra_to_dict(con.M.L, con.M, con.structure, con.decomposition),
        "salamon": print_salamon(con.M.L),
        "sasaki": report.verdict,
    }
    lines = [
        print_salamon(con.M.L),
        f"metric diagonal: {[str(con.M.g[i, i]) for i in range(con.M.dim)]}",
        f"Sasaki: {report.verdict}",
    ]
    _emit(args, payload, lines)
    return 0 if report.verdict else 1


def cmd_catalog(args) -> int:
    settings = load_settings(lambda_samples=args.lam, max_workers=args.workers)
    if args.action == "list":
        entries = select(args.filter)
        _emit(args, {"entries": [e.to_dict() for e in entries]},
              [f"{e.id:<10} {e.salamon}" for e in entries])
        return 0
    if not select(args.filter):
        print(f"No catalog entries match {args.filter!r} (have {', '.join(e.id for e in catalog())})",
              file=sys.stderr)
        return 2
    reports = verify_all(args.filter, settings=settings)
    if args.output:
        write_reports(Path(args.output), reports, timing=args.timing)
    if args.json:
        print(dumps(reports_to_dict(reports, timing=args.timing)))
    else:
        for r in reports:
            status = "ok  " if r.passed else "FAIL"
            failed = [k for k, v in r.checks.items() if v is False]
            extra = f"  failed: {', '.join(failed)}" if failed else ""
            timing = f"  ({r.wall_time:.2f}s)" if args.timing else ""
            print(f"{status} {r.entry_id:<10} {r.variant.label()}{timing}{extra}")
            for finding in r.findings:
                print(f"       finding: {finding}")
        passed = sum(r.passed for r in reports)
        print(f"{passed}/{len(reports)} variants passed")
    return 0 if all_passed(reports) else 1


# --- entry point -------------------------------------------------------------

def _add_output(p) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="Machine-readable output.")
    group.add_argument("--text", dest="json", action="store_false", help="Human-readable output (default).")


def _add_structure(p) -> None:
    p.add_argument("file", help="Salamon text or JSON algebra file ('-' for stdin).")
    p.add_argument("--bind", action="append", metavar="NAME=VALUE",
                   help="Bind a symbol such as tau=1 or lambda=1/2 (repeatable).")
    p.add_argument("--metric", help="Diagonal metric, e.g. -1,-1,-1,-1,1.")
    p.add_argument("--xi", help="1-based index of the Reeb vector.")
    p.add_argument("--phi", help="Fundamental form, e.g. 'e^{12}+e^{34}'.")
    _add_output(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact checks for Sasaki and Kähler Lie algebras.")
    parser.add_argument("--log-level", default=None, help="Logging level (default from settings).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="Parse Salamon notation and report basic structure.")
    p.add_argument("file", help="Salamon text or JSON algebra file ('-' for stdin).")
    p.add_argument("--bind", action="append", metavar="NAME=VALUE", help="Bind a symbol (repeatable).")
    _add_output(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("check", help="Check Jacobi, almost contact metric or Sasaki conditions.")
    _add_structure(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--sasaki", dest="mode", action="store_const", const="sasaki")
    mode.add_argument("--acms", dest="mode", action="store_const", const="acms")
    mode.add_argument("--jacobi", dest="mode", action="store_const", const="jacobi")
    p.set_defaults(func=cmd_check, mode="sasaki")

    for name, func, help_text in (
        ("decompose", cmd_decompose, "Check a standard decomposition and the rank-one equations."),
        ("reduce", cmd_reduce, "Kähler reduction of a z-standard Sasaki structure."),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_structure(p)
        p.add_argument("--ideal", help="1-based basis indices spanning the ideal, e.g. 2,3,4,5.")
        p.add_argument("--e0", help="1-based basis index of e0.")
        if name == "decompose":
            p.add_argument("--scan", action="store_true", help="Scan for z-standard witnesses.")
            p.add_argument("--solve-xi", action="store_true", help="Search for Reeb vectors in the ideal.")
            p.add_argument("--height", type=int, default=None, help="Coefficient height bound for scans.")
            p.add_argument("--terms", type=int, default=None, help="Maximum terms combined by scans.")
        p.set_defaults(func=func)

    p = sub.add_parser("construct", help="Build the Sasaki algebra of a Kähler seed (JSON).")
    p.add_argument("file", help="Seed JSON file ('-' for stdin).")
    _add_output(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("catalog", help="List or verify the built-in catalog.")
    p.add_argument("action", choices=["list", "verify"])
    p.add_argument("--filter", default="*", help="Glob on entry ids (default: all).")
    p.add_argument("--lambda", dest="lam", default=None, help="λ samples, e.g. 0,1,-1,1/2,2.")
    p.add_argument("--workers", type=int, default=None, help="Thread pool size.")
    p.add_argument("--output", default="", help="Also write the JSON report to this file.")
    p.add_argument("--timing", action="store_true", help="Include wall times (reports stop being byte-stable).")
    _add_output(p)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = args.log_level or load_settings().log_level
    logging.basicConfig(level=level.upper(), format="%(name)s:%(levelname)s:%(message)s")
    try:
        return args.func(args)
    except (SasakiError, ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
