"""Shor order-finding simulator with coherence closed forms."""

import json

from ._shorlab import (
    ConfigError,
    ShorInstance,
    ShorlabError,
    euler_phi,
    find_order,
    noisy_bound_and_gamma,
    noisy_closed_forms,
    outcome_distribution,
    pseudo_pure_closed_forms,
    success_probability,
    thm1_closed_forms,
)
from . import _shorlab

__all__ = [
    "ConfigError",
    "ShorInstance",
    "ShorlabError",
    "euler_phi",
    "find_order",
    "noisy_bound_and_gamma",
    "noisy_closed_forms",
    "outcome_distribution",
    "pseudo_pure_closed_forms",
    "simulate",
    "success_probability",
    "sweep",
    "thm1_closed_forms",
    "verify",
]


def _dump(config):
    return json.dumps(config or {})


def simulate(config=None):
    """Run the pipeline described by a config dict; returns the JSON report as a dict."""
    return json.loads(_shorlab._simulate(_dump(config)))


def verify(config=None):
    return json.loads(_shorlab._verify(_dump(config)))


def sweep(config, threads=0):
    return json.loads(_shorlab._sweep(_dump(config), threads))
