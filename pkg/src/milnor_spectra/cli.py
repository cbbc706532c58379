"""Command-line front end.

Exit codes: 0 success, 2 unreadable or malformed input, 3 oracle
verification failure, 4 corpus rows with errors (unless --lenient).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .documents import (
    DocumentError,
    ambient_dim_of,
    descriptor_to_json,
    loads,
    parse_descriptor,
    parse_problem,
    parse_space,
    spectrum_to_json,
)
from .ic import (
    FieldSpec,
    double_suspension_report,
    is_ic_hypersurface,
    is_integral_homology_manifold,
    nearby_decomposition,
    parse_fields,
    reason_to_dict,
    topological_manifold_check,
)
from .lines import check_problem
from .oracle import (
    DimensionCapExceeded,
    NonCyclotomicResidue,
    char_poly_exact,
    det_id_minus_matrix,
    dimension_cap_from_env,
    matrix_for_descriptor,
    spectrum_from_matrix,
)
from .planner import infinitude_witnesses, plan, totally_unipotent
from .spaces import ic_status
from .spectrum import (
    BrieskornPham,
    char_poly,
    det_id_minus_monodromy,
    galois_stable,
    milnor_number,
    order_bound_of,
    spectrum_of,
)

log = logging.getLogger("milnor_spectra")

EXIT_OK, EXIT_PARSE, EXIT_ORACLE, EXIT_ROWS = 0, 2, 3, 4


class OracleMismatch(RuntimeError):
    pass


@dataclass
class RunConfig:
    fields: list = field(default_factory=lambda: [FieldSpec(0)])
    output_format: str = "json"
    oracle_verify: bool = False
    j_max: int = 12
    dimension_cap: int = 128
    lenient: bool = False
    jobs: int = 1
    ambient_dim: int | None = None
    singular_dim: int | None = None

    def __post_init__(self):
        if not self.fields:
            raise ValueError("at least one field is required")
        if self.j_max < 2:
            raise ValueError("--j-max must be >= 2")
        if self.dimension_cap < 1:
            raise ValueError("--dimension-cap must be >= 1")


# ---------------------------------------------------------------------------
# reports


def _nearby_dict(nearby) -> dict:
    if nearby.kind == "split":
        return {
            "kind": "split",
            "constant_part_rank": nearby.constant_part_rank,
            "vanishing": spectrum_to_json(nearby.vanishing),
        }
    return {"kind": "non_split", "has_unipotent_nilpotent_note": nearby.has_unipotent_nilpotent_note}


def verify_with_oracle(desc, config: RunConfig) -> dict:
    s = spectrum_of(desc)
    if not galois_stable(s):
        return {"verified": False, "skipped": "spectrum is not Galois-stable; no integral matrix"}
    try:
        matrix = matrix_for_descriptor(desc)
        poly = char_poly_exact(matrix, config.dimension_cap)
        recovered = spectrum_from_matrix(matrix, order_bound_of(desc), config.dimension_cap)
    except DimensionCapExceeded as exc:
        raise OracleMismatch(f"oracle could not run: {exc}") from None
    except NonCyclotomicResidue as exc:
        raise OracleMismatch(str(exc)) from None
    det = det_id_minus_matrix(matrix)
    problems = []
    if recovered != s:
        problems.append(f"spectrum {recovered} from matrix, {s} in closed form")
    if poly != char_poly(s).expand():
        problems.append("characteristic polynomials differ")
    if det != det_id_minus_monodromy(s):
        problems.append(f"det(I - T) = {det} from matrix, Delta(1) = {det_id_minus_monodromy(s)}")
    if problems:
        raise OracleMismatch("; ".join(problems))
    return {"verified": True, "dimension": matrix.dim, "det_id_minus_T": det}


def analyze(desc, config: RunConfig) -> tuple[dict, list]:
    s = spectrum_of(desc)
    n = config.ambient_dim or ambient_dim_of(desc) or s.ambient_dim
    s = s.with_ambient_dim(n)
    stable = galois_stable(s)
    report: dict = {
        "descriptor": descriptor_to_json(desc),
        "spectrum": spectrum_to_json(s),
        "ambient_dim": n,
        "middle_degree": None if n is None else n - 1,
        "milnor_number": milnor_number(s),
        "orders": sorted(s.orders()),
        "galois_stable": stable,
        "char_poly": None,
        "det_id_minus_T": None,
        "integral_homology_manifold": None,
    }
    if stable:
        cp = char_poly(s)
        report["char_poly"] = {
            "factors": {str(d): m for d, m in cp.factors},
            "factored": str(cp),
            "expanded": cp.expanded_str(),
        }
        report["det_id_minus_T"] = cp.at_one()
        report["integral_homology_manifold"] = is_integral_homology_manifold(s).to_dict()
    per_field = []
    rows = []
    for fs in config.fields:
        verdict = is_ic_hypersurface(s, fs)
        nearby = nearby_decomposition(s, fs)
        per_field.append(
            {"field": str(fs), "verdict": verdict.to_dict(), "nearby": _nearby_dict(nearby)}
        )
        rows.append(
            {
                "field": str(fs),
                "milnor_number": milnor_number(s),
                "orders": " ".join(map(str, sorted(s.orders()))),
                "delta_1": report["det_id_minus_T"],
                "is_ic": verdict.is_ic,
                "reason": verdict.reason.kind,
                "integral_hm": None if not stable else report["integral_homology_manifold"]["holds"],
                "nearby": nearby.kind,
            }
        )
    report["fields"] = per_field
    report["hypotheses"] = {"ambient_ic_assumed": True, "generic_condition_assumed": True}
    if config.singular_dim is not None:
        report["topology"] = _topology_section(s, n, config.singular_dim, stable)
    if config.oracle_verify:
        report["oracle"] = verify_with_oracle(desc, config)
    return report, rows


def _topology_section(s, n, sing_dim, stable) -> dict:
    if n is None:
        return {"error": "ambient dimension unknown; pass --ambient-dim"}
    if not stable:
        return {"error": "spectrum is not Galois-stable; integral statements unavailable"}
    out: dict = {}
    try:
        ihm = is_integral_homology_manifold(s).holds
        out["manifold_criterion"] = topological_manifold_check(n, sing_dim, ihm).value
    except ValueError as exc:
        out["manifold_criterion"] = {"error": str(exc)}
    try:
        out["double_suspension"] = double_suspension_report(s, n, sing_dim).to_dict()
    except ValueError as exc:
        out["double_suspension"] = {"error": str(exc)}
    return out


def plan_report(desc, config: RunConfig) -> tuple[dict, list]:
    s = spectrum_of(desc)
    if config.oracle_verify:
        oracle = verify_with_oracle(desc, config)
    report: dict = {
        "descriptor": descriptor_to_json(desc),
        "spectrum": spectrum_to_json(s),
        "E": sorted(s.orders()),
        "totally_unipotent": totally_unipotent(s),
        "witnesses": infinitude_witnesses(s).describe(),
        "j_max": config.j_max,
        "fields": [],
    }
    rows = []
    for fs in config.fields:
        p = plan(s, fs, config.j_max)
        report["fields"].append(
            {
                "field": str(fs),
                "plan": p.to_json(),
                "members": p.members,
                "non_members": p.non_members,
                "disagreement_with_theorem": list(p.disagreement_with_theorem),
            }
        )
        for e in p.entries:
            rows.append({"field": str(fs), **e.to_dict()})
    if config.oracle_verify:
        report["oracle"] = oracle
    return report, rows


def corpus_row(args) -> list:
    """Evaluate one CSV row over every field; top-level so worker processes can import it."""
    index, cells, fields = args
    base = {"row": index, "exponents": ",".join(c.strip() for c in cells)}
    try:
        exps = tuple(int(c) for c in cells)
        desc = BrieskornPham(exps)
    except ValueError as exc:
        return [{**base, "field": None, "error": f"bad exponent row: {exc}"}]
    s = spectrum_of(desc)
    ihm = is_integral_homology_manifold(s)
    out = []
    for fs in fields:
        verdict = is_ic_hypersurface(s, fs)
        out.append(
            {
                **base,
                "field": str(fs),
                "mu": milnor_number(s),
                "E": " ".join(map(str, sorted(s.orders()))),
                "delta_1": ihm.det_value,
                "is_ic": verdict.is_ic,
                "reason": verdict.reason.kind,
                "integral_hm": ihm.holds,
                "error": None,
            }
        )
    return out


def corpus_report(text: str, config: RunConfig) -> tuple[list, list, int]:
    tasks = []
    for i, cells in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not cells or all(not c.strip() for c in cells) or cells[0].lstrip().startswith("#"):
            continue
        tasks.append((i, cells, tuple(config.fields)))
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(corpus_row, tasks, chunksize=16))
    else:
        results = [corpus_row(t) for t in tasks]
    rows = [r for chunk in results for r in chunk]
    errors = sum(1 for r in rows if r.get("error"))
    return rows, rows, errors


def line_report(problem, config: RunConfig) -> tuple[dict, list]:
    report: dict = {"n": problem.n, "mu_sum": problem.mu_sum, "claimed_dim": problem.claimed_dim, "fields": []}
    rows = []
    for fs in config.fields:
        r = check_problem(problem, fs)
        report["beta_bound"] = r.beta_bound
        report["fields"].append({"field": str(fs), **r.to_dict(), "consistent": r.consistent})
        for c in r.checks:
            rows.append(
                {
                    "field": str(fs),
                    "check": c.name,
                    "status": c.status.value,
                    "derived_bound": c.derived_bound,
                    "upper_bound": r.upper_bound,
                    "explanation": c.explanation,
                }
            )
    return report, rows


def space_report(space, config: RunConfig) -> tuple[dict, list]:
    rows = []
    for fs in config.fields:
        v = ic_status(space, fs)
        rows.append({"field": str(fs), "is_ic": v.is_ic, "reason": v.reason.kind,
                     "detail": json.dumps(reason_to_dict(v.reason))})
    report = {"fields": [{"field": r["field"], "verdict": ic_status(space, fs).to_dict()}
                         for r, fs in zip(rows, config.fields)]}
    return report, rows


# ---------------------------------------------------------------------------
# output


def render(report, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if not rows:
        return "" if fmt == "csv" else "_no rows_\n"
    keys = list(rows[0].keys())
    for r in rows[1:]:
        keys.extend(k for k in r if k not in keys)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _cell(r.get(k)) for k in keys})
        return buf.getvalue()
    lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r.get(k)).replace("|", "\\|") for k in keys) + " |")
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


# ---------------------------------------------------------------------------
# argument handling


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fields", default="Q", help="comma-separated fields, e.g. Q,F2,F5")
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--j-max", type=int, default=12)
    common.add_argument("--verify-oracle", action="store_true")
    common.add_argument("--dimension-cap", type=int, default=None,
                        help="oracle matrix size limit (default: $SPECTRA_DIM_CAP or 128)")
    common.add_argument("--lenient", action="store_true")
    common.add_argument("-o", "--output", default="-", help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="milnor-spectra", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="spectrum, Delta(t) and IC verdicts")
    p.add_argument("descriptor")
    p.add_argument("--ambient-dim", type=int, default=None)
    p.add_argument("--singular-dim", type=int, default=None,
                   help="dimension of the singular set (-1 if empty); enables topological checks")

    p = sub.add_parser("plan-suspension", parents=[common], help="classify j for f + w^j")
    p.add_argument("descriptor")

    p = sub.add_parser("corpus", parents=[common], help="batch-classify CSV rows of exponents")
    p.add_argument("csv_file")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("line-check", parents=[common], help="constraints for one-dimensional critical loci")
    p.add_argument("problem")

    p = sub.add_parser("space", parents=[common], help="IC status of a composite space document")
    p.add_argument("space")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            fields=parse_fields(args.fields),
            output_format=args.output_format,
            oracle_verify=args.verify_oracle,
            j_max=args.j_max,
            dimension_cap=args.dimension_cap if args.dimension_cap is not None else dimension_cap_from_env(),
            lenient=args.lenient,
            jobs=getattr(args, "jobs", 1),
            ambient_dim=getattr(args, "ambient_dim", None),
            singular_dim=getattr(args, "singular_dim", None),
        )
    except ValueError as exc:
        parser.error(str(exc))

    status = EXIT_OK
    try:
        if args.command == "corpus":
            report, rows, errors = corpus_report(_read(args.csv_file), config)
            if errors and not config.lenient:
                print(f"error: {errors} corpus row(s) could not be evaluated", file=sys.stderr)
                status = EXIT_ROWS
        else:
            source = {"analyze": "descriptor", "plan-suspension": "descriptor",
                      "line-check": "problem", "space": "space"}[args.command]
            doc = loads(_read(getattr(args, source)))
            if args.command == "analyze":
                report, rows = analyze(parse_descriptor(doc), config)
            elif args.command == "plan-suspension":
                report, rows = plan_report(parse_descriptor(doc), config)
            elif args.command == "line-check":
                report, rows = line_report(parse_problem(doc), config)
            else:
                report, rows = space_report(parse_space(doc), config)
    except (DocumentError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE

    text = render(report, rows, config.output_format)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
