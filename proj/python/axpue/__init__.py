"""PUE and application-level efficiency metrics (ApPUE, AoPUE)."""

import json as _json

from ._core import (
    AxpueError,
    __version__,
    aggregate_appue,
    average_power,
    builtin_scenarios,
    compute_aopue,
    compute_appue,
    compute_pue,
    compute_report,
    compute_weights,
    integrate_power,
    paper_table,
    report_table,
    simulate,
    verify_identity,
)


def compute_report_dict(power_csv, runs_jsonl, inventory_json, **kwargs):
    """Like compute_report, but returns the JSON report as a dict."""
    kwargs["format"] = "json"
    return _json.loads(compute_report(power_csv, runs_jsonl, inventory_json, **kwargs))


__all__ = [
    "AxpueError",
    "aggregate_appue",
    "average_power",
    "builtin_scenarios",
    "compute_aopue",
    "compute_appue",
    "compute_pue",
    "compute_report",
    "compute_report_dict",
    "compute_weights",
    "integrate_power",
    "paper_table",
    "report_table",
    "simulate",
    "verify_identity",
]
