"""Topology-aware task placement: task graphs and circuits mapped to QUBOs."""

import json
from pathlib import Path

from . import _core
from ._core import (
    Architecture,
    Assignment,
    ConfigError,
    LevelSchedule,
    ParseError,
    QuboProblem,
    Solution,
    TaskGraph,
    TopomapError,
    WeightConfig,
    build_qubo,
    compute_levels,
    decode,
    export_qmasm,
    export_qubo,
    export_solution,
    import_solution,
    make_assignment,
    normalize_for_hardware,
    parse_arch,
    parse_circuit,
    parse_qubo,
    parse_tcg,
    solve,
)

__all__ = [
    "Architecture",
    "Assignment",
    "ConfigError",
    "LevelSchedule",
    "ParseError",
    "QuboProblem",
    "Solution",
    "TaskGraph",
    "TopomapError",
    "WeightConfig",
    "build_qubo",
    "compute_levels",
    "decode",
    "export_qmasm",
    "export_qubo",
    "export_solution",
    "import_solution",
    "load_arch",
    "load_circuit",
    "load_tcg",
    "make_assignment",
    "mtom",
    "normalize_for_hardware",
    "optimize_pref",
    "parse_arch",
    "parse_circuit",
    "parse_qubo",
    "parse_tcg",
    "run",
    "solve",
]


def load_tcg(path):
    return parse_tcg(Path(path).read_text())


def load_circuit(path):
    return parse_circuit(Path(path).read_text())


def load_arch(path):
    return parse_arch(Path(path).read_text())


def mtom(assignment, graph, arch):
    """Cost report (classical) or fidelity report (quantum) as a dict."""
    if graph.flavor == "quantum":
        return json.loads(_core.mtom_quantum_json(assignment, graph, arch))
    return json.loads(_core.mtom_classical_json(assignment, graph, arch))


def run(graph, arch, weights=None, solver="tabu", seed=0, granularity=0,
        time_budget_ms=-1, timings=True):
    """Map, solve, decode and score. Returns the same report as `topomap run`."""
    return json.loads(_core.run_json(graph, arch, weights or WeightConfig(), solver, seed,
                                     granularity, time_budget_ms, timings))


def optimize_pref(graph, arch, solver="exact", seed=0, s_spread=2.0, s_reduction=0.9,
                  pref_initial=0.05, metric="fidelity_total", refine=False, granularity=0):
    return json.loads(_core.optimize_pref_json(graph, arch, solver, seed, s_spread,
                                               s_reduction, pref_initial, metric, refine,
                                               granularity))
