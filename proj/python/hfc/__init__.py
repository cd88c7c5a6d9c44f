"""Hierarchical fuzzy cart-pole controller (C++ core)."""

from ._hfc import (
    ConfigError,
    KnowledgeBase,
    NoRuleFired,
    PlantParams,
    PlantState,
    SfcError,
    builtin_kb,
    derivatives,
    design_gains,
    parse_rules,
    simulate,
    step,
    step_metrics,
)

__all__ = [
    "ConfigError",
    "KnowledgeBase",
    "NoRuleFired",
    "PlantParams",
    "PlantState",
    "SfcError",
    "builtin_kb",
    "derivatives",
    "design_gains",
    "parse_rules",
    "simulate",
    "step",
    "step_metrics",
]
