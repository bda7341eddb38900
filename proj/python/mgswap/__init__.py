"""Python front end to the mgswap scheduling core.

Scenarios are passed as JSON text or dicts; results come back as dicts with
the same layout as the command-line tool's --out files.
"""

import json

from . import _mgswap
from ._mgswap import InfeasibleError, atc, stc

__version__ = _mgswap.__version__

__all__ = [
    "InfeasibleError",
    "atc",
    "compare_pricing",
    "default_scenario",
    "expected_el",
    "solve_joint",
    "solve_station",
    "station_milp",
    "stc",
    "sweep_alpha",
]


def _text(scenario):
    if scenario is None:
        return ""
    if isinstance(scenario, dict):
        return json.dumps(scenario)
    return scenario


def default_scenario():
    return json.loads(_mgswap.default_scenario())


def normalize_scenario(scenario):
    """Validated scenario with every default filled in. Raises ValueError."""
    return json.loads(_mgswap.normalize_scenario(_text(scenario)))


def expected_el(scenario=None):
    return _mgswap.expected_el(_text(scenario))


def solve_joint(scenario=None, iterations=0):
    return json.loads(_mgswap.solve_joint(_text(scenario), iterations))


def compare_pricing(scenario=None):
    return json.loads(_mgswap.compare_pricing(_text(scenario)))


def sweep_alpha(scenario=None, alphas=(0.80, 0.85, 0.90, 0.95)):
    return json.loads(_mgswap.sweep_alpha(_text(scenario), list(alphas)))


def station_milp(scenario, prices, modes, arrivals):
    """The station's mixed-integer program as dense arrays (A, sense, rhs, c, bounds)."""
    return json.loads(_mgswap.station_milp(_text(scenario), list(prices), list(modes), list(arrivals)))


def solve_station(scenario, prices, modes, arrivals):
    return json.loads(_mgswap.solve_station(_text(scenario), list(prices), list(modes), list(arrivals)))
