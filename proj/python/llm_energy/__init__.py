"""Monte Carlo estimator of LLM inference energy per query."""

import json

from ._core import *  # noqa: F401,F403
from ._core import fleet_json, simulate_json


def simulate(config_path):
    """Run the configured scenario and return the summary document as a dict."""
    return json.loads(simulate_json(str(config_path)))


def fleet(config_path):
    """Return the fleet report lines (GWh/day per scenario) as a list of dicts."""
    return json.loads(fleet_json(str(config_path)))["fleet"]
