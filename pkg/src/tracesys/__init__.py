"""Trace-theoretic concurrent systems: combinatorics, spectra, uniform measures.

Public surface: build a :class:`TraceMonoid` and a :class:`ConcurrentSystem`
(or parse one from text / a safe Petri net), then analyze it with the
functions re-exported here.  Everything is immutable after construction
and safe to share across threads.
"""

from .errors import TraceSysError
from .graphs import (
    StateCliqueGraph,
    build_adsc,
    build_dsc,
    classify_nodes,
    condense,
    count_paths,
    count_paths_table,
)
from .measure import (
    UniformMeasure,
    numeric_null_check,
    uniform_measure,
    uniqueness_diagnostics,
)
from .monoid import Clique, NormalForm, TraceMonoid
from .oracle import cross_check, enumerate_executions
from .petri import SafePetriNet, parse_petri, petri_to_system
from .sampling import (
    SampledExecution,
    SplitMix64,
    UniformExecutionSampler,
    empirical_first_clique,
    sample_mcsc,
    sample_uniform_finite,
)
from .spectral import (
    CharacteristicRoot,
    PolynomialMatrix,
    characteristic_root,
    compare_roots,
    component_radii,
    determinant,
    growth_eval,
    mobius_matrix,
    spectral_property_report,
    spectral_radius,
    verify_inversion,
)
from .specfile import parse_system, render_system
from .system import ConcurrentSystem, SystemClassification

__version__ = "0.1.0"

__all__ = [
    "Clique",
    "CharacteristicRoot",
    "ConcurrentSystem",
    "NormalForm",
    "PolynomialMatrix",
    "SafePetriNet",
    "SampledExecution",
    "SplitMix64",
    "StateCliqueGraph",
    "SystemClassification",
    "TraceMonoid",
    "TraceSysError",
    "UniformExecutionSampler",
    "UniformMeasure",
    "build_adsc",
    "build_dsc",
    "characteristic_root",
    "classify_nodes",
    "compare_roots",
    "component_radii",
    "condense",
    "count_paths",
    "count_paths_table",
    "cross_check",
    "determinant",
    "empirical_first_clique",
    "enumerate_executions",
    "growth_eval",
    "mobius_matrix",
    "numeric_null_check",
    "parse_petri",
    "parse_system",
    "petri_to_system",
    "render_system",
    "sample_mcsc",
    "sample_uniform_finite",
    "spectral_property_report",
    "spectral_radius",
    "uniform_measure",
    "uniqueness_diagnostics",
    "verify_inversion",
]
