"""Command line entry point: cohomology, spectral pages, exclusion checks.

Reports are deterministic.  Every input file is hashed into the report, no
timestamps appear anywhere, and --json renders exactly the payload behind
the text output, so identical invocations produce identical bytes.

Exit codes: 0 success, 2 malformed input (bad JSON, bad fields, dangling
references, unreadable files), 3 mathematical validation or hypothesis
failure (Jacobi, d^2 != 0, non-automorphisms, solver bounds, inconsistent
check data), 4 internal audit failure in the spectral engine.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .cohomology import (
    cohomology,
    invariant_cohomology,
    relative_model,
    restricted_action,
)
from .documents import (
    DocumentError,
    InputDocument,
    parse_cup_document,
    parse_document,
    render_rational,
)
from .library import builtin_text
from .linalg import GroupBoundError
from .obstructions import (
    gysin_assemble,
    s3_check_4manifold,
    s3_check_5manifold,
    solve_les,
    wang_check,
)
from .spectral import SpectralAuditError, run_to_stabilization

__all__ = ["main"]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_AUDIT = 4

GROUP_BOUND_DEFAULT = 10000


def _group_bound() -> int:
    return int(os.environ.get("EQSS_GROUP_BOUND", GROUP_BOUND_DEFAULT))


def _load_text(spec: str) -> str:
    """File contents for a path or builtin:NAME, exactly as hashed."""
    if spec.startswith("builtin:"):
        return builtin_text(spec[len("builtin:"):])
    try:
        return Path(spec).read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"cannot read {spec}: {e}") from None


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _load_document(spec: str, inputs: dict) -> InputDocument:
    text = _load_text(spec)
    inputs[spec] = _sha256(text)
    return parse_document(text)


def _vector_text(vec) -> str:
    return "[" + ", ".join(str(render_rational(c)) for c in vec) + "]"


def _dims_text(dims) -> str:
    return "[" + ", ".join(str(d) for d in dims) + "]"


def _csv_ints(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise DocumentError(f"{what}: expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# commands; each returns (results dict, human-readable lines)


def _cmd_cohomology(args, inputs: dict):
    doc = _load_document(args.file, inputs)
    g = doc.algebra(args.algebra)
    h = None
    if args.relative is not None:
        h = doc.subalgebra(args.relative)
        if h.algebra != g:
            raise DocumentError(
                f"subalgebra '{args.relative}' has parent '{h.algebra.name}', not '{g.name}'"
            )
    model = relative_model(g, h)
    res = cohomology(model.complex)

    results = {
        "algebra": g.name,
        "relative": args.relative,
        "complex_dims": list(model.complex.dims),
        "dims": list(res.dims),
        "representatives": [
            [[render_rational(c) for c in v] for v in reps] for reps in res.representatives
        ],
    }
    title = f"cohomology of {g.name}" if h is None else f"cohomology of ({g.name}, {args.relative})"
    lines = [title, f"dims by degree: {_dims_text(res.dims)}"]
    for k, reps in enumerate(res.representatives):
        for v in reps:
            lines.append(f"  degree {k} class: {_vector_text(v)}")

    if args.invariants:
        names = [n for n in args.invariants.split(",") if n]
        gens = []
        for name in names:
            aut = doc.automorphism(name)
            if aut.algebra != g:
                raise DocumentError(
                    f"automorphism '{name}' acts on '{aut.algebra.name}', not '{g.name}'"
                )
            gens.append(restricted_action(model, aut))
        inv = invariant_cohomology(res, gens, bound=_group_bound())
        results["invariants"] = names
        results["invariant_dims"] = list(inv.dims)
        lines.append(f"invariants under {', '.join(names)}: {_dims_text(inv.dims)}")
    return results, lines


def _cmd_specseq(args, inputs: dict):
    doc = _load_document(args.file, inputs)
    entry = doc.complex_entry(args.complex)
    fc = entry.filtered()
    table = run_to_stabilization(fc, max_page=args.max_page)

    def entries(dims: dict) -> list:
        return [[p, q, d] for (p, q), d in sorted(dims.items()) if d]

    results = {
        "complex": args.complex,
        "dims": list(fc.complex.dims),
        "max_weight": fc.max_weight,
        "stabilized_at": table.stabilized_at,
        "pages": [{"r": pg.r, "entries": entries(pg.dims())} for pg in table.pages],
        "einf": entries(table.einf),
        "total_cohomology": list(table.total_cohomology),
        "audit": "ok",
    }
    lines = [
        f"spectral sequence of {args.complex}",
        f"filtration weights up to {fc.max_weight}; stabilized at page {table.stabilized_at}",
    ]
    for pg in table.pages:
        cells = "  ".join(f"({p},{q})={d}" for p, q, d in entries(pg.dims())) or "0"
        lines.append(f"  E_{pg.r}: {cells}")
    lines.append(f"limit totals by degree: {_dims_text(table.total_cohomology)}")
    lines.append("audit: ok (limit totals match the cohomology of the complex)")
    return results, lines


def _verdict_lines(verdict) -> list[str]:
    lines = [f"verdict: {verdict.verdict}", f"reason: {verdict.reason}"]
    if verdict.citation:
        lines.append(f"criterion: {verdict.citation}")
    if verdict.completeness:
        lines.append(f"completeness: {verdict.completeness}")
    return lines


def _solution_lines(solutions, problem) -> list[str]:
    lines = [f"sequence: {problem.render()}", f"solutions: {len(solutions)}"]
    for sol in solutions:
        assigned = ", ".join(f"{k}={v}" for k, v in sorted(sol.assignments.items()))
        lines.append(f"  {assigned or 'all terms known'}; ranks {list(sol.map_ranks)}")
    return lines


def _cmd_obstruct_s3_4m(args, inputs: dict):
    betti = _csv_ints(args.betti, "--betti")
    verdict = s3_check_4manifold(betti)
    results = {"check": "s3-4m", "betti": betti, "verdict": verdict.as_dict()}
    return results, [f"check s3-4m on Betti numbers {betti}"] + _verdict_lines(verdict)


def _cmd_obstruct_s3_5m(args, inputs: dict):
    text = _load_text(args.cup)
    inputs[args.cup] = _sha256(text)
    cup = parse_cup_document(text)
    verdict = s3_check_5manifold(args.b2, cup, args.sphere_hyperplane)
    results = {
        "check": "s3-5m",
        "b2": args.b2,
        "sphere_hyperplane": args.sphere_hyperplane,
        "verdict": verdict.as_dict(),
    }
    return results, [f"check s3-5m with b2 = {args.b2}"] + _verdict_lines(verdict)


def _cmd_obstruct_gysin(args, inputs: dict):
    if args.basic is None:
        raise DocumentError("gysin needs --basic with the base cohomology dims")
    if (args.pair is None) == (args.l is None):
        raise DocumentError("gysin needs exactly one of --l or --pair")
    pair = None
    if args.pair is not None:
        if args.file is None:
            raise DocumentError("--pair needs --file to resolve the algebra names")
        doc = _load_document(args.file, inputs)
        names = args.pair.split(",")
        if len(names) != 2:
            raise DocumentError("--pair expects ALGEBRA,SUBALGEBRA")
        g = doc.algebra(names[0])
        h = doc.subalgebra(names[1])
        if h.algebra != g:
            raise DocumentError(
                f"subalgebra '{names[1]}' has parent '{h.algebra.name}', not '{g.name}'"
            )
        pair = (g, h)

    basic = _csv_ints(args.basic, "--basic")
    total = _csv_ints(args.total, "--total") if args.total else None
    problem = gysin_assemble(
        l=args.l,
        basic_dims=basic,
        total_dims=total,
        pair=pair,
        split=args.split,
        oriented=args.oriented,
    )
    solutions = solve_les(problem)
    results = {
        "check": "gysin",
        "problem": problem.as_dict(),
        "solutions": [s.as_dict() for s in solutions],
        "solution_count": len(solutions),
    }
    lines = [problem.description] + _solution_lines(solutions, problem)
    if total is not None:
        results["admitted"] = bool(solutions)
        lines.append(f"given totals admitted: {'yes' if solutions else 'no'}")
    return results, lines


def _cmd_obstruct_wang(args, inputs: dict):
    gh = _csv_ints(args.gh, "--gh")
    total = _csv_ints(args.total, "--total") if args.total else None
    verdict = wang_check(args.codim, args.simply_connected, args.oriented, gh, total)
    results = {
        "check": "wang",
        "codim": args.codim,
        "simply_connected": args.simply_connected,
        "oriented": args.oriented,
        "gh_dims": gh,
        "verdict": verdict.as_dict(),
    }
    lines = [f"check wang at codimension {args.codim}"] + _verdict_lines(verdict)
    if verdict.problem is not None:
        solutions = solve_les(verdict.problem)
        results["solutions"] = [s.as_dict() for s in solutions]
        results["solution_count"] = len(solutions)
        lines.extend(_solution_lines(solutions, verdict.problem))
        if total is not None:
            results["admitted"] = bool(solutions)
            lines.append(f"given totals admitted: {'yes' if solutions else 'no'}")
    return results, lines


# ---------------------------------------------------------------------------
# argument parsing and the report envelope


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqss",
        description="Exact cohomology, spectral sequences, and exclusion checks.",
    )
    parser.add_argument("--version", action="version", version=f"eqss {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", help="Lie algebra cohomology, absolute or relative")
    p.add_argument("file", help="input document path, or builtin:NAME")
    p.add_argument("--algebra", required=True, help="algebra name in the document")
    p.add_argument("--relative", help="subalgebra name for relative cohomology")
    p.add_argument("--invariants", help="comma-separated automorphism names")
    p.add_argument("--json", action="store_true", dest="as_json")
    p.set_defaults(handler=_cmd_cohomology)

    p = sub.add_parser("specseq", help="spectral sequence of a filtered complex")
    p.add_argument("file", help="input document path, or builtin:NAME")
    p.add_argument("--complex", required=True, help="filtered complex name in the document")
    p.add_argument("--max-page", type=int, default=None, help="compute at least this many pages")
    p.add_argument("--json", action="store_true", dest="as_json")
    p.set_defaults(handler=_cmd_specseq)

    p = sub.add_parser("obstruct", help="group-action exclusion checks")
    ob = p.add_subparsers(dest="check", required=True)

    q = ob.add_parser("s3-4m", help="4-manifold second Betti number check")
    q.add_argument("--betti", required=True, help="comma-separated b0,b1,b2,b3,b4")
    q.add_argument("--json", action="store_true", dest="as_json")
    q.set_defaults(handler=_cmd_obstruct_s3_4m)

    q = ob.add_parser("s3-5m", help="5-manifold hyperplane check")
    q.add_argument("--b2", type=int, required=True, help="second Betti number")
    q.add_argument("--cup", required=True, help="cup form document path, or builtin:NAME")
    q.add_argument(
        "--sphere-hyperplane",
        action="store_true",
        help="a hyperplane of H_2 generated by embedded spheres is known to exist",
    )
    q.add_argument("--json", action="store_true", dest="as_json")
    q.set_defaults(handler=_cmd_obstruct_s3_5m)

    q = ob.add_parser("gysin", help="sphere-bundle long exact sequence solver")
    q.add_argument("--l", type=int, default=None, help="fiber sphere dimension")
    q.add_argument("--basic", help="comma-separated base cohomology dims")
    q.add_argument("--total", help="comma-separated total space dims to test")
    q.add_argument("--pair", help="ALGEBRA,SUBALGEBRA giving a two-row base")
    q.add_argument("--file", help="document resolving --pair names")
    q.add_argument("--split", action="store_true", help="even fiber dimension splitting")
    q.add_argument("--oriented", action="store_true", help="force a one-dimensional top class")
    q.add_argument("--json", action="store_true", dest="as_json")
    q.set_defaults(handler=_cmd_obstruct_gysin)

    q = ob.add_parser("wang", help="low-codimension orbit sequence check")
    q.add_argument("--codim", type=int, required=True, help="orbit codimension (1, 2, or 3)")
    q.add_argument("--gh", required=True, help="comma-separated pair cohomology dims")
    q.add_argument("--total", help="comma-separated total space dims to test")
    q.add_argument("--simply-connected", action="store_true")
    q.add_argument("--oriented", action="store_true")
    q.add_argument("--json", action="store_true", dest="as_json")
    q.set_defaults(handler=_cmd_obstruct_wang)

    return parser


def _render(report: dict, lines: list[str], as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    head = [
        f"eqss {report['engine_version']} :: {' '.join(report['command'])}",
    ]
    for name in sorted(report["inputs"]):
        head.append(f"input {name} sha256 {report['inputs'][name]}")
    return "\n".join(head + lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    args_list = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(args_list)
    inputs: dict[str, str] = {}
    try:
        results, lines = args.handler(args, inputs)
    except DocumentError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except SpectralAuditError as e:
        print(f"internal audit failure: {e}", file=sys.stderr)
        return EXIT_AUDIT
    except (GroupBoundError, ValueError) as e:
        print(f"validation error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    report = {
        "command": args_list,
        "engine_version": __version__,
        "inputs": inputs,
        "results": results,
    }
    sys.stdout.write(_render(report, lines, args.as_json))
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
