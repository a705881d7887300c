"""Python bindings for the mish REST test generator."""

from ._mish import (
    NONE_TEMPLATE,
    Automaton,
    EmptyScenario,
    InvalidConfig,
    MishError,
    OverlappingWindows,
    TemplateTree,
    UnknownEndpoint,
    UnknownTransition,
    build_traces,
    builtin_scenarios,
    fitness_lm,
    fitness_ws,
    iqr,
    median,
    run,
    scenario_targets,
    vargha_delaney_a12,
    wilcoxon_rank_sum,
)

__all__ = [
    "NONE_TEMPLATE",
    "Automaton",
    "EmptyScenario",
    "InvalidConfig",
    "MishError",
    "OverlappingWindows",
    "TemplateTree",
    "UnknownEndpoint",
    "UnknownTransition",
    "build_traces",
    "builtin_scenarios",
    "fitness_lm",
    "fitness_ws",
    "iqr",
    "median",
    "run",
    "scenario_targets",
    "vargha_delaney_a12",
    "wilcoxon_rank_sum",
]
