"""Command-line front end.

Graphs are given as ``builtin:<name>``, a path to an edge-list file, or ``-``
for standard input.  Every command prints one JSON document (``line-graph``
prints an edge list instead).  Exit codes: 0 computed, 1 usage or input
error, 2 size cap exceeded, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certification import (
    LineGraphCertificate,
    NumericCertificate,
    SymmetryVerdict,
    XBarWitness,
    certify_symmetric,
    check_automorphisms,
    check_clique_cover,
    check_perfect_matching,
)
from .chromatic import min_entropy_coloring
from .combinatorics import chromatic_number
from .distribution import Distribution
from .entropy import DEFAULT_TOL_BITS, KktCertificate, graph_entropy, kkt_residual_line_graph
from .errors import (
    GraphEntropyError,
    InvalidDistribution,
    InvariantViolation,
    NegativeEntry,
    SizeLimitExceeded,
    SumNotOne,
)
from .fractional import fractional_chromatic_number, fractional_edge_chromatic_number, is_k_graph
from .graph import (
    BUILTIN_NAMES,
    EdgeListError,
    Graph,
    builtin,
    format_edge_list,
    line_graph,
    parse_edge_list,
    structure_queries,
)

PARSE_SUM_TOL = 1e-9
ROUTE_CHOICES = ("auto", "perfect", "bipartite", "vertex-transitive", "kgraph", "numeric")


class UsageError(Exception):
    pass


# -- input ----------------------------------------------------------------------------


def _parse_number(token: str):
    token = token.strip()
    if "/" in token:
        num, den = token.split("/", 1)
        return Fraction(int(num), int(den))
    if token.lstrip("+-").isdigit():
        return Fraction(int(token))
    return float(token)


def parse_distribution(text: str, n: int) -> Distribution:
    """Parse ``"uniform"`` or comma/whitespace separated decimals and fractions ``a/b``.

    All entries rational (fractions or integers) gives an exact distribution
    that must sum to exactly 1.  Otherwise the sum may be off by at most
    ``1e-9``; the weights are then rescaled.  Nothing else is normalized.
    """
    text = text.strip()
    if text == "uniform":
        return Distribution.uniform(n)
    tokens = [t for t in text.replace(",", " ").split() if t]
    try:
        values = [_parse_number(t) for t in tokens]
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidDistribution(f"cannot parse distribution entry: {exc}") from None
    if len(values) != n:
        raise InvalidDistribution(f"distribution has {len(values)} entries, graph has {n} vertices")
    for i, x in enumerate(values):
        if x < 0:
            raise NegativeEntry(f"entry {i} is negative: {tokens[i]}")
    if all(isinstance(x, Fraction) for x in values):
        if sum(values) != 1:
            raise SumNotOne(f"entries sum to {sum(values)}, not 1")
        return Distribution(tuple(values))
    values = [float(x) for x in values]
    total = math.fsum(values)
    if abs(total - 1.0) > PARSE_SUM_TOL:
        raise SumNotOne(f"entries sum to {total!r}, not 1")
    return Distribution(tuple(x / total for x in values))


def load_graph(source: str) -> Graph:
    if source.startswith("builtin:"):
        try:
            return builtin(source[len("builtin:"):])
        except (KeyError, ValueError) as exc:
            raise UsageError(f"unknown built-in graph {source!r}; known: {', '.join(BUILTIN_NAMES)}") from exc
    if source == "-":
        return parse_edge_list(sys.stdin.read())
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"no such graph file: {source}")
    return parse_edge_list(path.read_text())


def load_distribution(source: str, n: int) -> Distribution:
    if source != "uniform" and Path(source).is_file():
        source = Path(source).read_text()
    return parse_distribution(source, n)


def graph_digest(g: Graph) -> dict:
    canon = format_edge_list(g).encode()
    return {"n": g.n, "m": g.m, "sha256": hashlib.sha256(canon).hexdigest()}


# -- serialization --------------------------------------------------------------------


def fmt(x: float, digits: int = 12) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.{digits}f}"


def fmt_gap(x: float) -> str:
    return f"{x:.3e}"


def exact(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def rational_field(q) -> dict:
    return {"value": fmt(float(q)), "exact": exact(q)}


def bits_field(value: float, gap: float | None = None, tol: float | None = None) -> dict:
    out = {"value": fmt(value), "unit": "bits"}
    if gap is not None:
        out["gap"] = fmt_gap(gap)
    if tol is not None:
        out["tol"] = fmt_gap(tol)
    return out


def _number(x):
    return exact(x) if isinstance(x, Fraction) else fmt(float(x))


def verdict_to_json(v: SymmetryVerdict) -> dict:
    out = {"verdict": v.verdict, "route": v.route}
    cert = v.certificate
    if cert is None:
        out["certificate"] = None
    elif v.route == "perfect":
        out["certificate"] = {"clique_cover": [list(c) for c in cert]}
    elif v.route == "bipartite":
        out["certificate"] = {"perfect_matching": [list(e) for e in cert]}
    elif v.route == "vertex-transitive":
        out["certificate"] = {"automorphism_generators": [list(p) for p in cert]}
    elif isinstance(cert, LineGraphCertificate):
        out["applies_to"] = "line graph of the input"
        out["certificate"] = {
            "k": cert.k,
            "x": [exact(x) for x in cert.kkt.x],
            "lambda": [exact(x) for x in cert.kkt.lam],
            "gamma": {",".join(map(str, u)): exact(g) for u, g in cert.kkt.gamma.items()},
            "kkt_residual": fmt_gap(cert.residual),
            "line_graph_entropy": bits_field(cert.entropy_bits, cert.gap_bits),
            "log2_k": bits_field(math.log2(cert.k)),
        }
    elif isinstance(cert, NumericCertificate):
        out["certificate"] = {
            "entropy_uniform": bits_field(cert.entropy_bits, cert.gap_bits, cert.tol_bits),
            "chi_f": rational_field(cert.chi_f),
            "log2_chi_f": bits_field(cert.log2_chi_f),
        }
    if isinstance(v.counterexample, XBarWitness):
        w = v.counterexample
        out["counterexample"] = {
            "independent_set": list(w.independent_set),
            "omega": w.omega,
            "x": [exact(x) for x in w.x],
            "bound": bits_field(w.bound_bits),
            "log2_omega": bits_field(w.log2_omega),
        }
    for key, val in v.details.items():
        out[key] = list(val) if isinstance(val, tuple) else val
    return out


def check_report_certificate(g: Graph, doc: dict) -> None:
    """Re-validate a certificate parsed back from a ``symmetric`` JSON document.

    ``g`` is the graph the command was run on (the root for the k-graph route).
    Raises InvariantViolation when the certificate does not check out.
    """
    cert = doc.get("certificate")
    route = doc.get("route")
    if doc["verdict"] == "symmetric" and cert is None:
        raise InvariantViolation("symmetric verdict without certificate")
    if route == "perfect" and cert:
        check_clique_cover(g, [tuple(c) for c in cert["clique_cover"]])
    elif route == "bipartite" and cert:
        check_perfect_matching(g, [tuple(e) for e in cert["perfect_matching"]])
    elif route == "vertex-transitive" and cert:
        check_automorphisms(g, cert["automorphism_generators"])
    elif route == "kgraph":
        kkt = KktCertificate(
            tuple(Fraction(x) for x in cert["x"]),
            tuple(Fraction(x) for x in cert["lambda"]),
            {tuple(int(t) for t in k.split(",")): Fraction(v) for k, v in cert["gamma"].items()},
        )
        p = [Fraction(1, g.m)] * g.m
        if kkt_residual_line_graph(g, p, kkt) > 1e-12:
            raise InvariantViolation("KKT certificate does not re-validate")
    elif route == "numeric":
        chi_f, _ = fractional_chromatic_number(g)
        if exact(chi_f) != cert["chi_f"]["exact"]:
            raise InvariantViolation("chi_f does not reproduce")
    if "counterexample" in doc:
        from .certification import check_xbar_witness

        w = doc["counterexample"]
        check_xbar_witness(
            g,
            XBarWitness(
                tuple(w["independent_set"]),
                w["omega"],
                tuple(Fraction(x) for x in w["x"]),
                float(w["bound"]["value"]),
            ),
        )


# -- commands -------------------------------------------------------------------------
# Each returns (payload dict, csv rows); rows are (quantity, value, exact, unit).


def cmd_entropy(g, args):
    dist = load_distribution(args.dist, g.n)
    res = graph_entropy(g, dist, tol_bits=args.tol, method=args.method)
    payload = {
        "distribution": [_number(x) for x in dist.weights],
        "entropy": bits_field(res.value_bits, res.gap_bits, args.tol),
        "lower_bound": bits_field(res.lower_bits),
        "iterations": res.iterations,
        "method": args.method,
        "minimizer": {
            "coordinates": [fmt(x) for x in res.minimizer.coords],
            "support": [
                {"independent_set": [v for v in range(g.n) if (s >> v) & 1], "weight": fmt(c)}
                for s, c in res.minimizer.support
            ],
        },
    }
    rows = [
        ("entropy", fmt(res.value_bits), "", "bits"),
        ("gap", fmt_gap(res.gap_bits), "", "bits"),
    ]
    return payload, rows


def cmd_chromatic_fractional(g, args):
    value, coloring = fractional_chromatic_number(g)
    payload = {
        "chi_f": rational_field(value),
        "fractional_coloring": [
            {"independent_set": [v for v in range(g.n) if (s >> v) & 1], "weight": exact(w)}
            for s, w in coloring.weights
        ],
    }
    return payload, [("chi_f", fmt(float(value)), exact(value), "")]


def cmd_edge_chromatic_fractional(g, args):
    res = fractional_edge_chromatic_number(g)
    kg = is_k_graph(g)
    payload = {
        "chi_prime_f": rational_field(res.value),
        "witness": res.witness if res.witness == "degree" else list(res.witness),
        "k_graph": {
            "is_k_graph": kg.is_k_graph,
            "k": kg.k,
            "witness": list(kg.witness) if isinstance(kg.witness, tuple) else kg.witness,
        },
    }
    return payload, [("chi_prime_f", fmt(float(res.value)), exact(res.value), "")]


def cmd_chromatic_entropy(g, args):
    dist = load_distribution(args.dist, g.n)
    coloring, value = min_entropy_coloring(g, dist)
    payload = {
        "distribution": [_number(x) for x in dist.weights],
        "chromatic_entropy": bits_field(value),
        "cells": [list(c) for c in coloring.cells],
        "cell_masses": [_number(m) for m in coloring.masses],
    }
    if g.names is not None:
        payload["cells_named"] = [[g.name(v) for v in c] for c in coloring.cells]
    return payload, [("chromatic_entropy", fmt(value), "", "bits")]


def cmd_symmetric(g, args):
    verdict = certify_symmetric(g, args.route, numeric=args.numeric, tol_bits=args.tol)
    payload = verdict_to_json(verdict)
    rows = [("verdict", verdict.verdict, "", ""), ("route", str(verdict.route), "", "")]
    return payload, rows


def _guarded(fn):
    try:
        return fn()
    except SizeLimitExceeded as exc:
        return {"skipped": str(exc)}
    except GraphEntropyError as exc:
        if isinstance(exc, InvariantViolation):
            raise
        return {"not_applicable": f"{type(exc).__name__}: {exc}"}


def cmd_report(g, args):
    st = structure_queries(g)
    rows = []
    payload = {
        "structure": {
            "is_bipartite": st.is_bipartite,
            "parts": [list(p) for p in st.parts] if st.parts else None,
            "components": [list(c) for c in st.components],
            "bridges": [list(b) for b in st.bridges],
            "regular_degree": st.regular_degree,
        }
    }

    def entropy_section():
        res = graph_entropy(g, Distribution.uniform(g.n), tol_bits=args.tol)
        rows.append(("entropy_uniform", fmt(res.value_bits), "", "bits"))
        return {"entropy_uniform": bits_field(res.value_bits, res.gap_bits, args.tol)}

    def chi_f_section():
        value, _ = fractional_chromatic_number(g)
        rows.append(("chi_f", fmt(float(value)), exact(value), ""))
        return {"chi_f": rational_field(value), "log2_chi_f": bits_field(math.log2(value))}

    def chi_section():
        chi, _ = chromatic_number(g)
        rows.append(("chi", str(chi), str(chi), ""))
        return {"chi": chi}

    def edge_section():
        if g.m == 0:
            return {"not_applicable": "no edges"}
        p, r = cmd_edge_chromatic_fractional(g, args)
        rows.extend(r)
        return p

    def coloring_section():
        coloring, value = min_entropy_coloring(g, Distribution.uniform(g.n))
        rows.append(("chromatic_entropy_uniform", fmt(value), "", "bits"))
        return {
            "chromatic_entropy_uniform": bits_field(value),
            "cells": [list(c) for c in coloring.cells],
        }

    def symmetry_section():
        v = certify_symmetric(g, "auto", numeric=True, tol_bits=args.tol)
        rows.append(("verdict", v.verdict, "", ""))
        return verdict_to_json(v)

    for key, fn in (
        ("entropy", entropy_section),
        ("fractional_chromatic", chi_f_section),
        ("chromatic_number", chi_section),
        ("fractional_edge_chromatic", edge_section),
        ("chromatic_entropy", coloring_section),
        ("symmetry", symmetry_section),
    ):
        payload[key] = _guarded(fn)
    return payload, rows


COMMANDS = {
    "entropy": cmd_entropy,
    "chromatic-fractional": cmd_chromatic_fractional,
    "edge-chromatic-fractional": cmd_edge_chromatic_fractional,
    "chromatic-entropy": cmd_chromatic_entropy,
    "symmetric": cmd_symmetric,
    "report": cmd_report,
}


# -- driver ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("graph", help="builtin:<name>, an edge-list file, or - for stdin")
    common.add_argument("--emit-csv", metavar="PATH", help="also write a flat value table")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL_BITS, help="solver tolerance in bits")
    common.add_argument("--timing", action="store_true", help="include wall-clock time")

    parser = _Parser(prog="graphentropy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("entropy", parents=[common], help="graph entropy H(G, P)")
    p.add_argument("--dist", default="uniform", help="uniform, a comma list, or a file")
    p.add_argument("--method", default="corrective", choices=("corrective", "away", "plain"))
    sub.add_parser("chromatic-fractional", parents=[common], help="exact chi_f")
    sub.add_parser("edge-chromatic-fractional", parents=[common], help="exact chi'_f and k-graph test")
    p = sub.add_parser("chromatic-entropy", parents=[common], help="minimum-entropy coloring")
    p.add_argument("--dist", default="uniform", help="uniform, a comma list, or a file")
    p = sub.add_parser("symmetric", parents=[common], help="symmetry verdict with certificate")
    p.add_argument("--route", default="auto", choices=ROUTE_CHOICES)
    p.add_argument("--numeric", action="store_true", help="fall back to the numeric route")
    sub.add_parser("line-graph", parents=[common], help="emit L(G) as an edge list")
    sub.add_parser("report", parents=[common], help="full battery as one JSON document")
    return parser


def _write_csv(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("quantity", "value", "exact", "unit"))
        w.writerows(rows)


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not args.tol > 0:
            raise UsageError("--tol must be positive")
        g = load_graph(args.graph)
        start = time.perf_counter()
        if args.command == "line-graph":
            lg, vmap = line_graph(g)
            header = "".join(
                f"# vertex {i} = edge {u} {v}\n" for i, (u, v) in enumerate(g.edge_list)
            )
            stdout.write(header + format_edge_list(lg))
            if args.emit_csv:
                _write_csv(args.emit_csv, [("n", str(lg.n), "", ""), ("m", str(lg.m), "", "")])
            return 0
        payload, rows = COMMANDS[args.command](g, args)
        report = {
            "command": list(argv),
            "input": graph_digest(g),
            "tol_bits": fmt_gap(args.tol),
            "result": payload,
        }
        if args.timing:
            report["elapsed_seconds"] = f"{time.perf_counter() - start:.3f}"
        stdout.write(json.dumps(report, indent=2) + "\n")
        if args.emit_csv:
            _write_csv(args.emit_csv, rows)
        return 0
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=stderr)
        return 3
    except (UsageError, EdgeListError, InvalidDistribution, GraphEntropyError, ValueError) as exc:
        witness = getattr(exc, "witness", None) or getattr(exc, "bridge", None)
        if hasattr(witness, "cycle"):
            witness = witness.cycle
        extra = f" (witness {list(witness)})" if isinstance(witness, tuple) else ""
        print(f"error: {exc}{extra}", file=stderr)
        return 1
    except SystemExit as exc:  # --help and --version
        return 0 if not exc.code else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
