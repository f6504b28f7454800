"""Machine-readable analysis report: one JSON document, stable key order."""

from __future__ import annotations

from fractions import Fraction

from . import measure as measure_mod
from . import oracle as oracle_mod
from . import spectral
from .errors import TraceSysError
from .graphs import build_adsc, build_dsc, classify_nodes
from .monoid import Clique
from .system import ConcurrentSystem


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def root_json(root: spectral.CharacteristicRoot | None) -> dict | None:
    if root is None:
        return None
    return {
        "lo": _frac(root.lo),
        "hi": _frac(root.hi),
        "approx": root.approx,
        "exact": root.exact,
        "width": _frac(root.width),
        "theta": list(root.theta),
    }


def _clique_key(c: Clique) -> str:
    return "".join(c.letters)


def _table_json(table: dict[str, dict[Clique, float]]) -> dict:
    return {
        s: {_clique_key(c): float(v) for c, v in row.items()}
        for s, row in table.items()
    }


def analyze_report(
    system: ConcurrentSystem,
    precision: Fraction = spectral.DEFAULT_PRECISION,
    series_order: int = 10,
) -> dict:
    """Full analysis of one system; sections degrade to null with a reason
    when their hypotheses fail (reducible, inaccessible, trivial)."""
    cls = system.classify()
    witnesses = {}
    for k, v in cls.witnesses.items():
        witnesses[k] = [list(x) for x in v] if k == "coxeter_components" else list(v)
    doc: dict = {
        "classification": {
            "trivial": cls.trivial,
            "accessible": cls.accessible,
            "alive": cls.alive,
            "monoid_irreducible": cls.monoid_irreducible,
            "irreducible": cls.irreducible,
            "witnesses": witnesses,
        },
        "monoid": {
            "letters": list(system.monoid.letters),
            "independence": [list(p) for p in system.monoid.independent_pairs],
            "mobius_polynomial": list(system.monoid.mobius_polynomial()),
            "clique_count": len(system.monoid.cliques()),
        },
    }

    pm = spectral.mobius_matrix(system)
    theta = spectral.determinant(pm)
    doc["polynomials"] = {
        "states": list(pm.states),
        "mobius_matrix": [[list(e) for e in row] for row in pm.entries],
        "determinant": list(theta),
    }

    dsc = build_dsc(system)
    classify_nodes(dsc)
    adsc = build_adsc(system)
    dsc_pos = dsc.positive_subgraph()
    cond = dsc.condensation()
    cond_pos = dsc_pos.condensation()
    doc["graphs"] = {
        "dsc_nodes": len(dsc),
        "adsc_nodes": len(adsc),
        "dsc_scc_count": len(cond.components),
        "dsc_terminal_count": sum(cond.terminal),
        "dsc_positive_scc_count": len(cond_pos.components),
        "dsc_positive_terminal_count": sum(cond_pos.terminal),
    }
    doc["node_labels"] = [
        {"state": s, "clique": _clique_key(c), "label": "positive" if pos else "null"}
        for (s, c), pos in zip(dsc.nodes, dsc.labels)
    ]
    pair_label = {n: lab for n, lab in zip(dsc.nodes, dsc.labels)}
    adsc.labels = tuple(pair_label[(s, c)] for (s, c, _i) in adsc.nodes)
    doc["spectral_radii"] = {
        "adsc": spectral.spectral_radius(adsc.succ),
        "adsc_positive": spectral.spectral_radius(adsc.positive_subgraph().succ),
    }

    try:
        root = spectral.characteristic_root(system, precision)
        doc["root"] = root_json(root)
    except TraceSysError as exc:
        root = None
        doc["root"] = None
        doc["root_error"] = str(exc)

    if root is not None:
        prop = spectral.spectral_property_report(system, precision)
        doc["spectral_property"] = {
            "holds": prop.holds,
            "witness": prop.witness,
            "letters": {
                e.letter: {
                    "root": "infinite" if e.infinite else root_json(e.root),
                    "comparison": {1: ">", 0: "=", -1: "<"}[e.comparison],
                }
                for e in prop.letters
            },
        }
    else:
        doc["spectral_property"] = None

    if cls.irreducible:
        m = measure_mod.uniform_measure(system, precision)
        null_check = measure_mod.numeric_null_check(m)
        uniq = measure_mod.uniqueness_diagnostics(m)
        doc["uniform_measure"] = {
            "gamma": {
                "base": system.base_state,
                "vector": {s: float(m.u[i]) for i, s in enumerate(system.states)},
            },
            "f": _table_json(m.f),
            "h": _table_json(m.h),
            "g": {
                f"({s},{_clique_key(c)})": float(v) for (s, c), v in m.g.items()
            },
            "mcsc": {
                "nodes": [f"({s},{_clique_key(c)})" for s, c in m.dsc.nodes],
                "initial": _table_json(m.initial),
                "matrix": [[float(x) for x in row] for row in m.transition],
                "unreachable": [bool(b) for b in m.unreachable],
            },
            "cocycle_crosscheck_error": m.cocycle_crosscheck_error,
            "identity_residuals": {
                k: float(v) for k, v in m.identity_residuals().items()
            },
        }
        doc["diagnostics"] = {
            "null_check": {
                "null_nodes": [f"({s},{_clique_key(c)})" for s, c in null_check.null_nodes],
                "max_null_h": null_check.max_null_h,
                "min_positive_h": float(null_check.min_positive_h),
            },
            "uniqueness": {
                "kernel_dim": uniq.kernel_dim,
                "eigen_residual": uniq.eigen_residual,
                "basic_components": list(uniq.basic_components),
                "terminal_components": list(uniq.terminal_components),
                "basic_equals_terminal": uniq.basic_equals_terminal,
                "null_reachability_ok": uniq.null_reachability_ok,
                "literal_reading_disagrees": uniq.literal_reading_disagrees,
                "ok": uniq.ok,
            },
        }
    else:
        doc["uniform_measure"] = None
        doc["diagnostics"] = {
            "skipped": "uniform measure requires an irreducible system"
        }

    inv = spectral.verify_inversion(system, series_order)
    doc["inversion"] = {
        "order": inv.order,
        "ok": inv.ok,
        "failures": [list(f) for f in inv.failures],
    }
    return doc


def oracle_report(system: ConcurrentSystem, max_len: int) -> dict:
    rep = oracle_mod.cross_check(system, max_len, cap=max(max_len, oracle_mod.DEFAULT_CAP))
    return {
        "max_len": rep.max_len,
        "ok": rep.ok,
        "inversion_ok": rep.inversion_ok,
        "mismatches": [list(m) for m in rep.mismatches],
    }
