"""
Settings access for the geometry engine.

Budgets are read from ``settings.GEOMETRY`` and fall back to the defaults in
``geometry.constants``.
"""
from typing import Any

from django.conf import settings

from geometry import constants

_DEFAULTS = {
    "PRIME_BOUND": constants.DEFAULT_PRIME_BOUND,
    "TRANSDUCTION_BUDGET": constants.DEFAULT_TRANSDUCTION_BUDGET,
    "INVERSE_NESTING_BOUND": constants.DEFAULT_INVERSE_NESTING_BOUND,
    "GROEBNER_PAIR_CAP": constants.DEFAULT_GROEBNER_PAIR_CAP,
    "CH_NODE_CAP": constants.DEFAULT_CH_NODE_CAP,
    "DNF_DISJUNCT_CAP": constants.DEFAULT_DNF_DISJUNCT_CAP,
    "CHART_SPLIT_LIMIT": constants.DEFAULT_CHART_SPLIT_LIMIT,
    "SAMPLE_POINTS": constants.DEFAULT_SAMPLE_POINTS,
    "SAMPLE_HEIGHT": constants.DEFAULT_SAMPLE_HEIGHT,
    "SAMPLE_SEED": constants.DEFAULT_SAMPLE_SEED,
    "ISOMORPHISM_BOUND": constants.DEFAULT_ISOMORPHISM_BOUND,
}


def geometry_setting(name: str, override: Any = None) -> Any:
    """
    Resolve a budget or tuning value.

    Args:
        name: Key of the GEOMETRY settings dict (e.g. "CH_NODE_CAP")
        override: Explicit value from the caller; wins when not None

    Returns:
        The override, the project setting, or the built-in default
    """
    if override is not None:
        return override
    configured = getattr(settings, "GEOMETRY", None) or {}
    if name in configured:
        return configured[name]
    return _DEFAULTS[name]
