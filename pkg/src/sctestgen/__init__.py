"""Test generation, coverage measurement and suite minimization for statecharts."""
from .coverage import CoverageReport, measure_suite, measure_trace
from .dsl import emit_dot, format_testcase, parse_model, parse_scenarios, render_model
from .expr import SourceError, parse_expr
from .graph import DualGraph, TransitionGraph, build_dual, build_graph, transition_pairs
from .interpreter import Scenario, Trace, run_scenario, step
from .minimizer import compute_nc, covers, effective_set, setcover_reduce
from .model import Statechart, flatten, validate_statechart
from .testgen import (FaultSequence, FaultTransition, TestCase, TestSuite, embed_complete,
                      fault_suite, fault_transitions, k_transition_suite, maximal_paths,
                      prefix_suite)

__version__ = "0.1.0"

__all__ = [
    "CoverageReport", "measure_suite", "measure_trace",
    "emit_dot", "format_testcase", "parse_model", "parse_scenarios", "render_model",
    "SourceError", "parse_expr",
    "DualGraph", "TransitionGraph", "build_dual", "build_graph", "transition_pairs",
    "Scenario", "Trace", "run_scenario", "step",
    "compute_nc", "covers", "effective_set", "setcover_reduce",
    "Statechart", "flatten", "validate_statechart",
    "FaultSequence", "FaultTransition", "TestCase", "TestSuite", "embed_complete",
    "fault_suite", "fault_transitions", "k_transition_suite", "maximal_paths", "prefix_suite",
]
