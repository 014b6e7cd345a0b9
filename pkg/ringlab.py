"""
ringlab.py
Command-line front end: ring properties, ideals, resolutions and the theorem suite

Usage:
    python ringlab.py props "Z/12"
    python ringlab.py pd "Z/8" 2 --format json
    python ringlab.py resolve "Z/12" "Z/12/(2)" --max-steps 8
    python ringlab.py warfield "Z/8" --matrix "[[2, 4], [0, 4]]"
    python ringlab.py verify all --report-csv reports/verify.csv

Exit codes: 0 pass, 1 property or theorem violation, 2 parse or usage
error, 3 capability error (query not supported for this ring or bound).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

PROJECT_ROOT = Path(__file__).resolve().parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from extension.trivial import TrivialExtensionRing, annihilator_in_triv_ext  # noqa: E402
from harness.parser import (  # noqa: E402
    ParseError,
    element_from_text,
    matrix_from_text,
    module_from_text,
    ring_from_text,
)
from harness.reports import (  # noqa: E402
    document,
    property_report,
    records_frame,
    render_json,
    render_table,
    write_csv,
)
from harness.verify import VerifyConfig, theorem_ids, verify_all, verify_theorem  # noqa: E402
from homology.resolution import (  # noqa: E402
    minimal_free_resolution,
    projective_dimension_cyclic,
    resolution_periodicity,
)
from ideals.lattice import all_ideals, annihilator_ideal, is_principal  # noqa: E402
from modules.warfield import brute_force_profile, warfield_decompose  # noqa: E402
from rings.core import (  # noqa: E402
    CapabilityError,
    ConstructionError,
    InternalError,
    PreconditionError,
    RepresentationError,
    UsageError,
)
from rings.decomposition import local_decomposition  # noqa: E402
from rings.factory import construct_ring  # noqa: E402

logger = logging.getLogger("ringlab")

# ---------------------------
# Defaults
# ---------------------------
DEFAULT_MAX_ORDER = 64
DEFAULT_MAX_STEPS = 8
DEFAULT_SAMPLES = 10_000
DEFAULT_SEED = 42
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
LOG_MAX_BYTES = 5 * 1024 * 1024
LOG_BACKUPS = 3

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAPABILITY = 3


def configure_logging(verbose: bool, logfile: Optional[Path] = None) -> logging.Logger:
    """Console handler on stderr (stdout carries the report) plus an optional rotating file."""
    root = logging.getLogger()
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
    for handler in list(root.handlers):
        if getattr(handler, "_ringlab", False):
            root.removeHandler(handler)
            handler.close()
    formatter = logging.Formatter(LOG_FORMAT)

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(formatter)
    console.setLevel(logging.DEBUG if verbose else logging.WARNING)
    console._ringlab = True
    root.addHandler(console)

    if logfile:
        logfile.parent.mkdir(parents=True, exist_ok=True)
        fh = RotatingFileHandler(logfile, maxBytes=LOG_MAX_BYTES, backupCount=LOG_BACKUPS)
        fh.setFormatter(formatter)
        fh._ringlab = True
        root.addHandler(fh)
    return logger


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("table", "json"),
        default="table",
        help="Human table (default) or the versioned JSON report document",
    )
    common.add_argument(
        "--max-order",
        type=int,
        default=DEFAULT_MAX_ORDER,
        help="Largest ring order for exhaustive ideal enumeration",
    )
    common.add_argument(
        "--max-steps",
        type=int,
        default=DEFAULT_MAX_STEPS,
        help="Resolution steps before a verdict is given up",
    )
    common.add_argument(
        "--samples",
        type=int,
        default=DEFAULT_SAMPLES,
        help="Random samples per infinite-ring check; also bounds the random presentations and matrices of the finite sweeps",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="Global seed; per-instance seeds are derived from it",
    )
    common.add_argument(
        "--report-csv",
        type=Path,
        default=None,
        help="Also write the report table to this CSV file",
    )
    common.add_argument(
        "--timings",
        action="store_true",
        help="Include wall-clock and memory figures in JSON output",
    )
    common.add_argument(
        "--logfile",
        type=Path,
        default=None,
        help="Rotating log file (5 MiB x 3)",
    )
    common.add_argument(
        "--verbose",
        action="store_true",
        help="Enable verbose logging for debugging",
    )

    parser = argparse.ArgumentParser(
        prog="ringlab",
        description="Exact checks on finite rings, DVRs and trivial ring extensions",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub = commands.add_parser("props", parents=[common], help="Property report of a ring")
    sub.add_argument("expr", help='Ring expression, e.g. "Z/12" or "triv(Zloc(2), Frac)"')

    sub = commands.add_parser("ideals", parents=[common], help="All ideals of a finite ring")
    sub.add_argument("expr")

    sub = commands.add_parser("ann", parents=[common], help="Annihilator (0 : a)")
    sub.add_argument("expr")
    sub.add_argument("element", help='Element literal, e.g. "2", "x^2+1", "(0, 5)"')

    sub = commands.add_parser("divides", parents=[common], help="Does a divide b?")
    sub.add_argument("expr")
    sub.add_argument("a")
    sub.add_argument("b")

    sub = commands.add_parser("pd", parents=[common], help="Projective dimension of A/aA")
    sub.add_argument("expr")
    sub.add_argument("element")

    sub = commands.add_parser("resolve", parents=[common], help="Minimal free resolution of a module")
    sub.add_argument("expr")
    sub.add_argument("module", help='Module expression, e.g. "Z/8/(2)" or "free(2)/rel [[2, 0]]"')

    sub = commands.add_parser("warfield", parents=[common], help="Diagonalise a relation matrix over a chain ring")
    sub.add_argument("expr")
    sub.add_argument("--matrix", required=True, help='Relation matrix, e.g. "[[2, 4], [0, 4]]"')

    sub = commands.add_parser("decompose", parents=[common], help="Local factors of a finite ring")
    sub.add_argument("expr")

    sub = commands.add_parser("verify", parents=[common], help="Run a theorem check, or 'all'")
    sub.add_argument("theorem", help=f"One of: {', '.join(theorem_ids())}, all")
    sub.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Worker threads for the distributivity sweeps",
    )
    return parser.parse_args(argv)


# ============================
# COMMANDS
# ============================

@dataclass
class CommandOutput:
    result: Any
    frame: pd.DataFrame
    passed: bool = True
    # extra lines printed under the table
    notes: Sequence[str] = ()


def _field_frame(result: Dict[str, Any]) -> pd.DataFrame:
    rows = [(k, ", ".join(map(str, v)) if isinstance(v, list) else v) for k, v in result.items()]
    return pd.DataFrame(rows, columns=["field", "value"])


def cmd_props(args: argparse.Namespace) -> CommandOutput:
    ring = ring_from_text(args.expr)
    report = property_report(ring, args.expr, args.max_order)
    return CommandOutput(report.to_dict(), report.to_frame(), report.consistent)


def cmd_ideals(args: argparse.Namespace) -> CommandOutput:
    ring = ring_from_text(args.expr)
    rows = []
    for ideal in sorted(all_ideals(ring, args.max_order), key=lambda i: (i.size, sorted(i.elements))):
        generator = is_principal(ideal)
        rows.append({
            "ideal": ideal.describe(),
            "size": ideal.size,
            "principal": generator is not None,
            "elements": ", ".join(ring.format_element(x) for x in ideal.sorted_elements()),
        })
    return CommandOutput(rows, records_frame(rows, ["ideal", "size", "principal", "elements"]))


def cmd_ann(args: argparse.Namespace) -> CommandOutput:
    ring = ring_from_text(args.expr)
    a = element_from_text(ring, args.element)
    if isinstance(ring, TrivialExtensionRing):
        ideal = annihilator_in_triv_ext(ring, a)
    else:
        ideal = annihilator_ideal(ring, a)
    result: Dict[str, Any] = {
        "element": ring.format_element(a),
        "annihilator": ideal.describe(),
        "finitely_generated": ideal.finitely_generated,
    }
    if ideal.elements is not None:
        result["order"] = ideal.size
        result["elements"] = [ring.format_element(x) for x in ideal.sorted_elements()]
    return CommandOutput(result, _field_frame(result))


def cmd_divides(args: argparse.Namespace) -> CommandOutput:
    ring = ring_from_text(args.expr)
    a = element_from_text(ring, args.a)
    b = element_from_text(ring, args.b)
    verdict = ring.divides(a, b)
    result = {"a": ring.format_element(a), "b": ring.format_element(b), "divides": bool(verdict)}
    passed = True
    if verdict:
        result["witness"] = ring.format_element(verdict.witness)
        passed = ring.mul(a, verdict.witness) == b
    return CommandOutput(result, _field_frame(result), passed)


def cmd_pd(args: argparse.Namespace) -> CommandOutput:
    ring = ring_from_text(args.expr)
    a = element_from_text(ring, args.element)
    verdict = projective_dimension_cyclic(ring, a, max_steps=args.max_steps)
    result: Dict[str, Any] = {"module": f"{ring.label}/({ring.format_element(a)})", "verdict": verdict.kind.value}
    if verdict.b is not None:
        result["b"] = ring.format_element(verdict.b)
        result["c"] = ring.format_element(verdict.c)
        result["cycle_checks"] = list(verdict.cycle_checks)
    for name in ("period", "offset", "steps", "length", "factor"):
        value = getattr(verdict, name)
        if value is not None:
            result[name] = value
    passed = all(verdict.cycle_checks)
    return CommandOutput(result, _field_frame(result), passed)


def _format_matrix(ring, matrix) -> List[List[str]]:
    return [[ring.format_element(e) for e in row] for row in matrix]


def cmd_resolve(args: argparse.Namespace) -> CommandOutput:
    ring = ring_from_text(args.expr)
    module = module_from_text(args.module, ring)
    resolution = minimal_free_resolution(ring, module, max_steps=args.max_steps)
    periodicity = resolution_periodicity(resolution)
    result: Dict[str, Any] = {
        "ring": resolution.ring_label,
        "module": resolution.module_label,
        "betti": list(resolution.betti),
        "complete": resolution.complete,
        "length": resolution.length,
        "minimal": resolution.minimal,
        "exact": resolution.exact,
        "periodicity": {"period": periodicity[0], "offset": periodicity[1]} if periodicity else None,
        "matrices": [_format_matrix(ring, m) for m in resolution.matrices],
    }
    if resolution.warning:
        result["warning"] = resolution.warning
    rows = [
        {
            "step": c.position + 1,
            "rank": resolution.betti[c.position + 1],
            "matrix": " ".join(str(r) for r in _format_matrix(ring, resolution.matrices[c.position])),
            "composite_zero": c.composite_zero,
            "kernel_order": c.kernel_order,
            "image_order": c.image_order,
            "exact": c.exact,
        }
        for c in resolution.certificates
    ]
    notes = [f"Betti numbers: {list(resolution.betti)}" + ("" if resolution.complete else " ...")]
    if periodicity:
        notes.append(f"kernel states repeat with period {periodicity[0]} from step {periodicity[1]}")
    if resolution.warning:
        notes.append(f"warning: {resolution.warning}")
    columns = ["step", "rank", "matrix", "composite_zero", "kernel_order", "image_order", "exact"]
    return CommandOutput(result, records_frame(rows, columns), resolution.exact, notes)


def cmd_warfield(args: argparse.Namespace) -> CommandOutput:
    ring = ring_from_text(args.expr)
    matrix = matrix_from_text(ring, args.matrix)
    rank = len(matrix[0])
    decomposition = warfield_decompose(ring, matrix, rank)
    pi = ring.format_element(decomposition.pi)
    summands = [
        ring.label if e == decomposition.chain_length else f"{ring.label}/({pi}^{e})"
        for e in decomposition.exponents
    ]
    result: Dict[str, Any] = {
        "pi": pi,
        "chain_length": decomposition.chain_length,
        "exponents": list(decomposition.exponents),
        "summands": summands,
        "predicted_order": decomposition.predicted_order,
        "predicted_histogram": decomposition.predicted_histogram(),
    }
    passed = True
    try:
        order, histogram = brute_force_profile(ring, matrix, rank)
        result["brute_force"] = {"order": order, "histogram": histogram}
        passed = order == decomposition.predicted_order and histogram == decomposition.predicted_histogram()
    except CapabilityError as e:
        result["brute_force"] = str(e)
    rows = [{"summand": s, "exponent": e} for s, e in zip(summands, decomposition.exponents)]
    notes = [f"order {decomposition.predicted_order}, annihilator histogram {decomposition.predicted_histogram()}"]
    if isinstance(result["brute_force"], dict):
        notes.append("coset enumeration " + ("agrees" if passed else "DISAGREES"))
    return CommandOutput(result, records_frame(rows, ["summand", "exponent"]), passed, notes)


def cmd_decompose(args: argparse.Namespace) -> CommandOutput:
    ring = ring_from_text(args.expr)
    decomposition = local_decomposition(ring)
    rows = []
    for factor in decomposition.factors:
        rows.append({
            "idempotent": ring.format_element(factor.idempotent),
            "order": factor.order,
            "factor": construct_ring(factor.recognized).label if factor.recognized is not None else factor.ring.label,
        })
    return CommandOutput(rows, records_frame(rows, ["idempotent", "order", "factor"]))


def cmd_verify(args: argparse.Namespace) -> CommandOutput:
    config = VerifyConfig(
        max_order=args.max_order,
        max_steps=args.max_steps,
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
    )
    logger.info("=" * 70)
    logger.info("RINGLAB THEOREM VERIFICATION: %s", args.theorem)
    logger.info("Seed %d, bounds %s", config.seed, config.bounds())
    logger.info("=" * 70)
    if args.theorem == "all":
        reports = verify_all(config)
    else:
        reports = [verify_theorem(args.theorem, config)]
    frame = records_frame([r.row() for r in reports])
    notes = [f"{r.theorem_id}: {c}" for r in reports for c in r.counterexamples]
    return CommandOutput(
        [r.to_dict(args.timings) for r in reports],
        frame,
        all(r.passed for r in reports),
        notes,
    )


COMMANDS = {
    "props": cmd_props,
    "ideals": cmd_ideals,
    "ann": cmd_ann,
    "divides": cmd_divides,
    "pd": cmd_pd,
    "resolve": cmd_resolve,
    "warfield": cmd_warfield,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
}

_INPUT_FIELDS = ("expr", "element", "a", "b", "module", "matrix", "theorem")


def _inputs(args: argparse.Namespace) -> Dict[str, Any]:
    inputs = {name: getattr(args, name) for name in _INPUT_FIELDS if hasattr(args, name)}
    inputs.update(max_order=args.max_order, max_steps=args.max_steps, samples=args.samples, seed=args.seed)
    return inputs


def run(args: argparse.Namespace) -> int:
    output = COMMANDS[args.command](args)
    if args.format == "json":
        print(render_json(document(args.command, _inputs(args), output.result, output.passed)))
    else:
        print(render_table(output.frame))
        for note in output.notes:
            print(note)
    if args.report_csv:
        write_csv(output.frame, args.report_csv)
    if not output.passed:
        logger.error("%s reported a violation", args.command)
        return EXIT_VIOLATION
    return EXIT_PASS


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    configure_logging(args.verbose, args.logfile)

    try:
        return run(args)
    except ParseError as e:
        print(e.render(), file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ConstructionError, RepresentationError, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapabilityError as e:
        print(f"not supported: {e}", file=sys.stderr)
        return EXIT_CAPABILITY
    except InternalError as e:
        logger.error("internal check failed: %s", e)
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
