"""Command-line front end.

Four subcommands: ``exact`` (clique-number solve over the compatibility
graph), ``construct`` (build a named family, verify it, emit a
certificate), ``formulas`` (closed-form bound table), ``verify`` (recheck a
certificate file from scratch).

Reports go to stdout as text, json, or csv.  The json and csv forms carry
exactly the same deterministic fields, so identical invocations produce
byte-identical output; wall-clock timings appear in text mode only.

Exit codes: 0 ok, 2 configuration error, 3 time budget exhausted (the
reported size is only a lower bound), 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass

from .bounds import applicable_formulas
from .certify import (
    CertificateFormatError,
    VerificationError,
    dump_certificate,
    load_certificate_doc,
    recheck_certificate,
    verify_family,
)
from .constructions import (
    ConstructedFamily,
    bipartite_family,
    block_family,
    endpoint_swap_quadruple,
    fixed_endpoint_family,
    greedy_family,
    k4_family,
    shifted_block_family,
    triangle_matching_family,
)
from .core import DSpec, HamPath, ValidationError, parse_dspec
from .relations import DifferencePredicate, build_compat_graph
from .search import max_clique

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4

CONSTRUCTION_NAMES = (
    "greedy", "bipartite", "block", "shifted-block", "fixed-endpoint",
    "k4", "sH", "m53",
)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    c: int | None = None
    dspec: str | None = None
    predicate: str = "cycle"
    construction: str | None = None
    budget_seconds: int = 300
    output_format: str = "text"
    output_path: str | None = None
    seed: int | None = None
    certificate: str | None = None

    def validate(self) -> None:
        if self.budget_seconds < 1:
            raise ConfigError("--budget must be at least 1 second")
        if self.n is not None and self.n < 2:
            raise ConfigError("--n must be at least 2")
        if self.dspec is not None:
            parse_dspec(self.dspec)  # raises DSpecParseError on bad input
        if self.predicate == "k4" and self.dspec is not None:
            raise ConfigError("--dspec does not apply to the k4 predicate")

    def difference_predicate(self) -> DifferencePredicate:
        if self.predicate == "k4":
            return DifferencePredicate.contains_k4()
        if self.dspec is None:
            raise ConfigError("a cycle predicate needs --dspec")
        return DifferencePredicate.cycle_in(parse_dspec(self.dspec))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamdiff",
        description="Families of cycle-different Hamiltonian paths: exact "
                    "solves, constructions, bounds, certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="text", help="report format (default text)")
        p.add_argument("--out", metavar="PATH", default=None,
                       help="also write the report (for construct: the "
                            "certificate) to PATH")

    p_exact = sub.add_parser("exact", help="exact maximum family size")
    p_exact.add_argument("--n", type=int, required=True)
    p_exact.add_argument("--dspec", default=None,
                         help="cycle-length spec: all|odd|even|div=c|ndiv=c|in=l1,l2,...")
    p_exact.add_argument("--predicate", choices=("cycle", "k4"), default="cycle")
    p_exact.add_argument("--budget", type=int, default=300,
                         help="solver time budget in seconds (default 300)")
    p_exact.add_argument("--seed", type=int, default=None)
    common(p_exact)

    p_con = sub.add_parser("construct", help="build and verify a family")
    p_con.add_argument("--name", required=True, choices=CONSTRUCTION_NAMES)
    p_con.add_argument("--n", type=int, default=None)
    p_con.add_argument("--c", type=int, default=None)
    p_con.add_argument("--dspec", default=None)
    p_con.add_argument("--predicate", choices=("cycle", "k4"), default="cycle")
    p_con.add_argument("--seed", type=int, default=None)
    common(p_con)

    p_for = sub.add_parser("formulas", help="closed-form bound table")
    p_for.add_argument("--n", type=int, required=True)
    p_for.add_argument("--c", type=int, default=None)
    common(p_for)

    p_ver = sub.add_parser("verify", help="recheck a certificate file")
    p_ver.add_argument("certificate", help="certificate JSON file")
    common(p_ver)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for field in ("n", "c", "dspec", "predicate", "seed", "certificate"):
        if hasattr(args, field):
            setattr(cfg, field, getattr(args, field))
    if hasattr(args, "name"):
        cfg.construction = args.name
    if hasattr(args, "budget"):
        cfg.budget_seconds = args.budget
    cfg.output_format = args.format
    cfg.output_path = args.out
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# commands


def cmd_exact(cfg: RunConfig) -> tuple[int, dict, dict]:
    predicate = cfg.difference_predicate()
    start = time.monotonic()
    graph = build_compat_graph(cfg.n, predicate)
    result = max_clique(graph, budget_seconds=cfg.budget_seconds)
    total = time.monotonic() - start
    report = {
        "command": "exact",
        "n": cfg.n,
        "predicate": predicate.render(),
        "budget_seconds": cfg.budget_seconds,
        "size": result.size,
        "optimal": result.optimal,
        "nodes_explored": result.nodes_explored,
        "members": list(result.members),
        "paths": [str(graph.paths[i]) for i in result.members],
    }
    timing = {
        "solver_seconds": f"{result.elapsed_seconds:.3f}",
        "total_seconds": f"{total:.3f}",
    }
    return (EXIT_OK if result.optimal else EXIT_BUDGET), report, timing


def _build_family(cfg: RunConfig) -> ConstructedFamily:
    name = cfg.construction

    def need(**values) -> None:
        for flag, value in values.items():
            if value is None:
                raise ConfigError(f"construction {name!r} needs --{flag}")

    if name == "greedy":
        need(n=cfg.n)
        return greedy_family(cfg.n, cfg.difference_predicate(), seed=cfg.seed)
    if name == "bipartite":
        need(n=cfg.n)
        return bipartite_family(cfg.n)
    if name == "block":
        need(n=cfg.n, c=cfg.c)
        return block_family(cfg.n, cfg.c)
    if name == "shifted-block":
        need(n=cfg.n, c=cfg.c)
        return shifted_block_family(cfg.n, cfg.c)
    if name == "fixed-endpoint":
        need(n=cfg.n, c=cfg.c)
        return fixed_endpoint_family(cfg.n, cfg.c)
    if name == "k4":
        need(n=cfg.n)
        return k4_family(cfg.n)
    if name == "sH":
        need(n=cfg.n)
        quadruple = endpoint_swap_quadruple(HamPath(tuple(range(1, cfg.n + 1))))
        return ConstructedFamily(
            paths=tuple(sorted(quadruple)),
            claim=DifferencePredicate.cycle_in(DSpec("odd")),
            provenance=f"sH(n={cfg.n})",
        )
    if name == "m53":
        if cfg.n not in (None, 5):
            raise ConfigError("the m53 construction is fixed at n = 5")
        return triangle_matching_family()
    raise ConfigError(f"unknown construction {name!r}")


def cmd_construct(cfg: RunConfig) -> tuple[int, dict, dict]:
    start = time.monotonic()
    family = _build_family(cfg)
    report = {
        "command": "construct",
        "name": cfg.construction,
        "construction": family.provenance,
        "n": family.n,
        "c": cfg.c,
        "predicate": family.claim.render(),
        "seed": cfg.seed,
        "size": family.size,
    }
    try:
        cert = verify_family(family)
    except VerificationError as exc:
        i, j, lengths = exc.failures[0]
        report.update({
            "verified": False,
            "failed_pair": [i, j],
            "union_cycle_lengths": sorted(lengths),
        })
        return EXIT_VERIFY, report, {}
    report.update({
        "verified": True,
        "pairs_verified": len(cert.witnesses),
        "paths": [str(p) for p in family.paths],
    })
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as handle:
            handle.write(dump_certificate(cert))
        report["certificate_path"] = cfg.output_path
    else:
        report["certificate_path"] = None
    timing = {"total_seconds": f"{time.monotonic() - start:.3f}"}
    return EXIT_OK, report, timing


def cmd_formulas(cfg: RunConfig) -> tuple[int, dict, dict]:
    rows = applicable_formulas(cfg.n, cfg.c)
    report = {
        "command": "formulas",
        "n": cfg.n,
        "c": cfg.c,
        "rows": [
            {
                "name": row.name,
                "n": row.n,
                "c": row.c,
                "lower": None if row.lower is None else str(row.lower),
                "upper": None if row.upper is None else str(row.upper),
            }
            for row in rows
        ],
    }
    return EXIT_OK, report, {}


def cmd_verify(cfg: RunConfig) -> tuple[int, dict, dict]:
    try:
        with open(cfg.certificate, encoding="utf-8") as handle:
            doc = load_certificate_doc(handle.read())
    except OSError as exc:
        raise ConfigError(f"cannot read certificate: {exc}") from None
    report = {"command": "verify", "certificate": cfg.certificate}
    try:
        summary = recheck_certificate(doc)
    except VerificationError as exc:
        i, j, lengths = exc.failures[0]
        report.update({
            "valid": False,
            "failed_pair": [i, j],
            "union_cycle_lengths": sorted(lengths),
        })
        return EXIT_VERIFY, report, {}
    report.update(summary)
    report["valid"] = True
    return EXIT_OK, report, {}


# ---------------------------------------------------------------------------
# rendering


def _csv_scalar(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _csv_value(value) -> str:
    if isinstance(value, list):
        return ";".join(_csv_scalar(v) for v in value)
    return _csv_scalar(value)


def render_report(report: dict, fmt: str, timing: dict) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if report["command"] == "formulas":
            writer.writerow(["name", "n", "c", "lower", "upper"])
            for row in report["rows"]:
                writer.writerow([_csv_scalar(row[k])
                                 for k in ("name", "n", "c", "lower", "upper")])
        else:
            keys = list(report)
            writer.writerow(keys)
            writer.writerow([_csv_value(report[k]) for k in keys])
        return buf.getvalue()
    lines = []
    for key, value in report.items():
        if key == "rows":
            lines.append("bounds:")
            for row in value:
                low = "?" if row["lower"] is None else row["lower"]
                high = "?" if row["upper"] is None else row["upper"]
                c_part = "" if row["c"] is None else f" c={row['c']}"
                lines.append(f"  {row['name']}{c_part}: [{low}, {high}]")
        elif key == "paths" and isinstance(value, list):
            lines.append("paths:")
            lines.extend(f"  {p}" for p in value)
        elif isinstance(value, list):
            lines.append(f"{key}: " + " ".join(str(v) for v in value))
        else:
            lines.append(f"{key}: {value}")
    for key, value in timing.items():
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


_COMMANDS = {
    "exact": cmd_exact,
    "construct": cmd_construct,
    "formulas": cmd_formulas,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        code, report, timing = _COMMANDS[cfg.command](cfg)
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CertificateFormatError as exc:
        print(f"error: bad certificate: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    rendered = render_report(report, cfg.output_format, timing)
    sys.stdout.write(rendered)
    if cfg.output_path and cfg.command != "construct":
        with open(cfg.output_path, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    return code


if __name__ == "__main__":
    sys.exit(main())
