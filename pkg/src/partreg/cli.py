"""Command-line front end.

Subcommands mirror the library: check-cp, zero-subset, color, search,
forcing, demo, blocking.  Default output is canonical JSON (sorted keys,
no whitespace) so identical configurations always produce byte-identical
bytes; wall-clock timing is only emitted under --timing, and --pretty adds
a human-readable rendering.  Exit codes: 0 = found/holds, 1 = absent/fails,
2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .colorings import get_coloring
from .linalg import Matrix, frac
from .regularity import CapacityError, columns_property, zero_column_subset
from .search import (SearchBudget, blocking_counterexample_search,
                     find_mono_solution, forcing_number,
                     truncation_forcing_demo)
from .systems import SystemSpec, finite_system, get_system

EXIT_OK = 0
EXIT_ABSENT = 1
EXIT_ERROR = 2


@dataclass(frozen=True)
class ExperimentConfig:
    """One CLI invocation, fully determining its output."""

    command: str
    system: Optional[str] = None
    matrix_file: Optional[str] = None
    coloring: Optional[str] = None
    values: tuple[str, ...] = ()
    subject: Optional[str] = None
    property_id: Optional[str] = None
    n: Optional[int] = None
    h: int = 64
    b: int = 7
    k: int = 2
    cap: int = 100
    cols: Optional[int] = None
    max_size: Optional[int] = None
    max_nodes: Optional[int] = None
    truncation_rows: int = 0
    cp_cap: int = 16
    seed: int = 0
    threads: int = 1
    pretty: bool = False
    timing: bool = False
    out: Optional[str] = None


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(config: ExperimentConfig, payload: dict, pretty_lines=None) -> None:
    text = _canonical_json(payload)
    sys.stdout.write(text)
    if config.pretty and pretty_lines:
        for line in pretty_lines:
            sys.stdout.write(line + "\n")
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_system(config: ExperimentConfig) -> SystemSpec:
    if config.matrix_file:
        with open(config.matrix_file, encoding="utf-8") as fh:
            matrix = Matrix.from_json(fh.read())
        return SystemSpec(f"file:{config.matrix_file}", matrix, "matrix file",
                          tuple(f"x{j}" for j in range(matrix.cols)))
    if not config.system:
        raise ValueError("a system id or --matrix FILE is required")
    return get_system(config.system)


def _load_finite_system(config: ExperimentConfig) -> SystemSpec:
    spec = _load_system(config)
    if not spec.is_finite:
        raise ValueError(f"system {spec.id!r} is infinite; this command needs "
                         "a finite system (use a truncation or --matrix)")
    if spec.labels is None:
        return finite_system(spec.id)
    return spec


def cmd_check_cp(config: ExperimentConfig) -> int:
    spec = _load_finite_system(config)
    cert = columns_property(spec.matrix, cap=config.cp_cap)
    payload = {
        "system": spec.id,
        "columns_property": cert is not None,
        "certificate": cert.to_json_dict() if cert else None,
    }
    pretty = ["columns property: " +
              ("holds" if cert else "none")]
    if cert:
        pretty.append("blocks: " + " | ".join(
            "{" + ",".join(str(i) for i in b) + "}" for b in cert.blocks))
    _emit(config, payload, pretty)
    return EXIT_OK if cert else EXIT_ABSENT


def cmd_zero_subset(config: ExperimentConfig) -> int:
    spec = _load_system(config)
    subset = zero_column_subset(spec.matrix, cols=config.cols,
                                max_size=config.max_size)
    payload = {
        "system": spec.id,
        "cols": config.cols,
        "max_size": config.max_size,
        "subset": subset,
    }
    pretty = ["zero-sum columns: " +
              ("none" if subset is None else
               "{" + ",".join(str(s) for s in subset) + "}")]
    _emit(config, payload, pretty)
    return EXIT_OK if subset is not None else EXIT_ABSENT


def cmd_color(config: ExperimentConfig) -> int:
    coloring = get_coloring(config.coloring)
    lines = []
    pretty = []
    for raw in config.values:
        c = coloring(frac(raw))
        lines.append(str(c))
        pretty.append(f"{raw} -> {c}")
    sys.stdout.write("\n".join(lines) + "\n")
    if config.pretty:
        sys.stdout.write("\n".join(pretty) + "\n")
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_search(config: ExperimentConfig) -> int:
    spec = _load_finite_system(config)
    coloring = get_coloring(config.coloring)
    budget = SearchBudget(domain_bound=config.n, max_nodes=config.max_nodes)
    outcome = find_mono_solution(spec.matrix, coloring, budget)
    assignment = None
    if outcome.assignment is not None:
        assignment = {label: int(v) for label, v
                      in zip(spec.labels, outcome.assignment)}
    payload = {
        "system": spec.id,
        "coloring": config.coloring,
        "N": config.n,
        "kind": outcome.kind,
        "reason": outcome.reason,
        "assignment": assignment,
        "nodes": outcome.nodes,
    }
    if config.timing:
        payload["ms"] = outcome.ms
    pretty = [f"{outcome.kind}" +
              (f": {assignment}" if assignment else f" ({outcome.reason})")]
    _emit(config, payload, pretty)
    return EXIT_OK


def cmd_forcing(config: ExperimentConfig) -> int:
    spec = _load_finite_system(config)
    result = forcing_number(spec.matrix, config.k, config.cap)
    payload = {
        "system": spec.id,
        "colors": result.colors,
        "cap": result.cap,
        "forced_at": result.forced_at,
        "avoiding": list(result.avoiding) if result.avoiding else None,
        "nodes": result.nodes,
    }
    pretty = [f"forced at N={result.forced_at}" if result.forced_at
              else f"not forced below cap {result.cap}"]
    _emit(config, payload, pretty)
    return EXIT_OK


def cmd_demo(config: ExperimentConfig) -> int:
    if config.subject != "truncation":
        raise ValueError(f"unknown demo subject: {config.subject}")
    result = truncation_forcing_demo(config.truncation_rows, config.k, config.cap)
    payload = {
        "demo": "truncation",
        "equations": config.truncation_rows + 1,
        "colors": result.colors,
        "cap": result.cap,
        "forced_at": result.forced_at,
        "avoiding": list(result.avoiding) if result.avoiding else None,
        "nodes": result.nodes,
    }
    pretty = [f"forced at N={result.forced_at}" if result.forced_at
              else f"not forced below cap {result.cap}"]
    _emit(config, payload, pretty)
    return EXIT_OK


def cmd_blocking(config: ExperimentConfig) -> int:
    result = blocking_counterexample_search(
        config.property_id, height_bound=config.h, factorial_bound=config.b)
    payload = {
        "property": result.property_id,
        "bound": result.bound,
        "counterexample": result.counterexample,
        "checked": result.checked,
    }
    pretty = ["none found" if result.counterexample is None
              else f"counterexample: {result.counterexample}"]
    _emit(config, payload, pretty)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partreg",
        description="Exact-rational toolkit for partition regularity of "
                    "linear systems.")
    parser.add_argument("--pretty", action="store_true",
                        help="append a human-readable rendering")
    parser.add_argument("--timing", action="store_true",
                        help="include wall-clock timing in the JSON output")
    parser.add_argument("--out", metavar="FILE", help="also write JSON to FILE")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed echoed into configs that sample")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker hint (results are order-deterministic)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-cp", help="decide Rado's columns property")
    p.add_argument("system", nargs="?", help="registry id, e.g. schur, vdw:4")
    p.add_argument("--matrix", dest="matrix_file", metavar="FILE")
    p.add_argument("--cap", dest="cp_cap", type=int, default=16,
                   help="column cap for the exhaustive search")

    p = sub.add_parser("zero-subset", help="find columns summing to zero")
    p.add_argument("system", nargs="?")
    p.add_argument("--matrix", dest="matrix_file", metavar="FILE")
    p.add_argument("--cols", type=int, default=None,
                   help="columns per family for infinite systems")
    p.add_argument("--max-size", dest="max_size", type=int, default=None)

    p = sub.add_parser("color", help="evaluate a coloring on values")
    p.add_argument("coloring", help="registry id, e.g. digit:q=5, tau, psi")
    p.add_argument("values", nargs="+", help="integers or p/q rationals")

    p = sub.add_parser("search", help="monochromatic kernel solution search")
    p.add_argument("system", nargs="?")
    p.add_argument("--matrix", dest="matrix_file", metavar="FILE")
    p.add_argument("--coloring", required=True)
    p.add_argument("-N", dest="n", type=int, required=True,
                   help="solution entries range over 1..N")
    p.add_argument("--max-nodes", dest="max_nodes", type=int, default=None)

    p = sub.add_parser("forcing", help="forcing number via backtracking")
    p.add_argument("system", nargs="?")
    p.add_argument("--matrix", dest="matrix_file", metavar="FILE")
    p.add_argument("-k", dest="k", type=int, default=2, help="number of colors")
    p.add_argument("--cap", type=int, default=100)

    p = sub.add_parser("demo", help="desk-scale demonstration runs")
    p.add_argument("subject", choices=["truncation"])
    p.add_argument("-M", dest="truncation_rows", type=int, default=0,
                   help="use the first M+1 equations")
    p.add_argument("-k", dest="k", type=int, default=1)
    p.add_argument("--cap", type=int, default=20)

    p = sub.add_parser("blocking", help="counterexample scans for the "
                                        "blocking-coloring properties")
    p.add_argument("property_id",
                   choices=["tau-gap", "chain-step", "carry-blocking"])
    p.add_argument("-H", dest="h", type=int, default=64,
                   help="height bound (max of |num|, den)")
    p.add_argument("-B", dest="b", type=int, default=7,
                   help="denominators divide B!")

    return parser


_HANDLERS = {
    "check-cp": cmd_check_cp,
    "zero-subset": cmd_zero_subset,
    "color": cmd_color,
    "search": cmd_search,
    "forcing": cmd_forcing,
    "demo": cmd_demo,
    "blocking": cmd_blocking,
}


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    fields = {f: getattr(args, f) for f in ExperimentConfig.__dataclass_fields__
              if hasattr(args, f)}
    if "values" in fields and fields["values"] is not None:
        fields["values"] = tuple(fields["values"])
    return ExperimentConfig(**fields)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    try:
        return _HANDLERS[config.command](config)
    except (CapacityError, KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
