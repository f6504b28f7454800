"""Command-line surface: check, analyze, sample, oracle, export-dot.

Exit codes: 0 success, 1 analysis-level failure (an expectation or a
cross-check did not hold), 2 input errors (unreadable, unparsable or
invalid input files).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import dot as dot_mod
from . import measure as measure_mod
from . import report as report_mod
from . import sampling
from .errors import TraceSysError
from .graphs import build_adsc, build_dsc, classify_nodes
from .petri import parse_petri, petri_to_system
from .specfile import parse_system
from .system import ConcurrentSystem

EXIT_OK = 0
EXIT_ANALYSIS = 1
EXIT_INPUT = 2


def _load_system(path: str, petri: bool) -> ConcurrentSystem:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if petri:
        return petri_to_system(parse_petri(text))
    return parse_system(text)


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", help="system spec file (or Petri net with --petri)")
    p.add_argument("--petri", action="store_true", help="input is a safe Petri net")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracesys",
        description="Analyze trace-theoretic concurrent systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate and classify a system")
    _add_input_args(p)
    p.add_argument("--expect-irreducible", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("analyze", help="full combinatorial and measure analysis")
    _add_input_args(p)
    p.add_argument("--precision", default="1e-12", help="root interval width")
    p.add_argument("--series-order", type=int, default=10)
    p.add_argument("--expect-irreducible", action="store_true")
    p.add_argument("--json", action="store_true", help="print the full JSON report")

    p = sub.add_parser("sample", help="draw random executions")
    _add_input_args(p)
    p.add_argument("--mode", choices=["mcsc", "uniform"], default="mcsc")
    p.add_argument("--start", help="start state (default: base state)")
    p.add_argument("--steps", type=int, default=20, help="mcsc: number of cliques")
    p.add_argument("--length", type=int, default=10, help="uniform: execution length")
    p.add_argument("--count", type=int, default=1, help="number of samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("oracle", help="brute-force cross-check of all counts")
    _add_input_args(p)
    p.add_argument("--max-len", type=int, default=8)

    p = sub.add_parser("export-dot", help="graphviz rendering")
    _add_input_args(p)
    p.add_argument(
        "--graph",
        choices=["dsc", "adsc", "states", "condensation"],
        default="dsc",
    )
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    return parser


def _cmd_check(system: ConcurrentSystem, args) -> int:
    cls = system.classify()
    if args.json:
        doc = {
            "trivial": cls.trivial,
            "accessible": cls.accessible,
            "alive": cls.alive,
            "monoid_irreducible": cls.monoid_irreducible,
            "irreducible": cls.irreducible,
            "witnesses": {k: list(v) if k != "coxeter_components" else [list(x) for x in v]
                          for k, v in cls.witnesses.items()},
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"states={len(system.states)} letters={len(system.monoid.letters)}")
        print(f"trivial={cls.trivial} accessible={cls.accessible} alive={cls.alive}")
        print(f"monoid_irreducible={cls.monoid_irreducible} irreducible={cls.irreducible}")
        for k, v in cls.witnesses.items():
            print(f"witness {k}: {v}")
    if args.expect_irreducible and not cls.irreducible:
        print("expectation failed: system is not irreducible", file=sys.stderr)
        return EXIT_ANALYSIS
    return EXIT_OK


def _cmd_analyze(system: ConcurrentSystem, args) -> int:
    doc = report_mod.analyze_report(
        system, precision=Fraction(args.precision), series_order=args.series_order
    )
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        _print_summary(doc)
    if args.expect_irreducible:
        prop = doc.get("spectral_property")
        if not doc["classification"]["irreducible"] or not (prop and prop["holds"]):
            print("expectation failed: system is not irreducible", file=sys.stderr)
            return EXIT_ANALYSIS
    if not doc["inversion"]["ok"]:
        print("inversion identity failed", file=sys.stderr)
        return EXIT_ANALYSIS
    return EXIT_OK


def _print_summary(doc: dict) -> None:
    cls = doc["classification"]
    print(
        "classification: "
        + " ".join(f"{k}={cls[k]}" for k in ("trivial", "accessible", "alive", "irreducible"))
    )
    print(f"determinant coefficients: {doc['polynomials']['determinant']}")
    if doc["root"]:
        r = doc["root"]
        kind = "exact" if r["exact"] else f"width {r['width']}"
        print(f"characteristic root: {r['approx']:.12g} ({kind})")
    else:
        print(f"characteristic root: unavailable ({doc.get('root_error')})")
    g = doc["graphs"]
    print(
        f"dsc: {g['dsc_nodes']} nodes, {g['dsc_positive_scc_count']} positive SCCs "
        f"({g['dsc_positive_terminal_count']} terminal); adsc: {g['adsc_nodes']} nodes"
    )
    nulls = [
        "({},{})".format(n["state"], n["clique"])
        for n in doc["node_labels"]
        if n["label"] == "null"
    ]
    print(f"null nodes: {nulls}")
    if doc["spectral_property"]:
        sp = doc["spectral_property"]
        print(f"spectral property: holds={sp['holds']} witness={sp['witness']}")
    if doc["uniform_measure"]:
        um = doc["uniform_measure"]
        print(f"cocycle vector: {um['gamma']['vector']}")
        print(f"uniqueness ok: {doc['diagnostics']['uniqueness']['ok']}")
    print(f"inversion identity up to order {doc['inversion']['order']}: {doc['inversion']['ok']}")


def _cmd_sample(system: ConcurrentSystem, args) -> int:
    start = args.start or system.base_state
    out = []
    if args.mode == "mcsc":
        m = measure_mod.uniform_measure(system)
        for k in range(args.count):
            s = sampling.sample_mcsc(m, start, args.steps, seed=args.seed + k)
            out.append(s.trace)
    else:
        sampler = sampling.UniformExecutionSampler(system, start, args.length)
        for k in range(args.count):
            rng = sampling.SplitMix64(args.seed, stream=k)
            out.append(sampler.sample(rng))
    if args.json:
        print(
            json.dumps(
                {
                    "mode": args.mode,
                    "start": start,
                    "seed": args.seed,
                    "samples": [list(w) for w in out],
                }
            )
        )
    else:
        for w in out:
            print(" ".join(w))
    return EXIT_OK


def _cmd_oracle(system: ConcurrentSystem, args) -> int:
    doc = report_mod.oracle_report(system, args.max_len)
    print(json.dumps(doc, indent=2))
    return EXIT_OK if doc["ok"] else EXIT_ANALYSIS


def _cmd_export_dot(system: ConcurrentSystem, args) -> int:
    if args.graph == "states":
        text = dot_mod.dot_states(system)
    else:
        graph = build_dsc(system) if args.graph in ("dsc", "condensation") else build_adsc(system)
        if args.graph == "condensation":
            text = dot_mod.dot_condensation(graph)
        else:
            if graph.kind == "adsc":
                dsc = build_dsc(system)
                classify_nodes(dsc)
                pair = {n: l for n, l in zip(dsc.nodes, dsc.labels)}
                graph.labels = tuple(pair[(s, c)] for s, c, _i in graph.nodes)
            text = dot_mod.dot_state_clique_graph(graph)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        system = _load_system(args.file, args.petri)
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TraceSysError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    handler = {
        "check": _cmd_check,
        "analyze": _cmd_analyze,
        "sample": _cmd_sample,
        "oracle": _cmd_oracle,
        "export-dot": _cmd_export_dot,
    }[args.command]
    try:
        return handler(system, args)
    except TraceSysError as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
