"""Discrete-event simulator of serverless platform dynamics."""

from ._faasim import (
    LatencyHistogram,
    ResultBundle,
    Scenario,
    ScenarioError,
    TimelineSample,
    __version__,
    load_scenario,
    run_file,
    run_scenario,
    scenario_from_json,
    sweep,
)

__all__ = [
    "LatencyHistogram",
    "ResultBundle",
    "Scenario",
    "ScenarioError",
    "TimelineSample",
    "__version__",
    "load_scenario",
    "run_file",
    "run_scenario",
    "scenario_from_json",
    "sweep",
]
