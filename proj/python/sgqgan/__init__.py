"""Self-guided adversarial learning of photonic quantum states, processes and phases."""

import json as _json

from ._core import (
    Error,
    GainSchedule,
    accuracy,
    apply_unitary,
    bloch_coords,
    builtin_targets,
    characterize,
    chi_from_unitary,
    coincidence_prob_dip,
    coincidence_prob_multiphase,
    estimate_phases,
    hwp,
    learn_state,
    normalize,
    overlap,
    parse_state,
    qwp,
    root_fidelity,
    uniform_psi,
    waveplates,
)
from ._core import resolve_config as _resolve_config
from ._core import run_config as _run_config


def resolve_config(config):
    """Fully resolved config (every default filled) as a dict."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _json.loads(_resolve_config(text))


def run_config(config):
    """Run an experiment config like the CLI does; returns written files and the final metric."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _run_config(text)


__all__ = [
    "Error",
    "GainSchedule",
    "accuracy",
    "apply_unitary",
    "bloch_coords",
    "builtin_targets",
    "characterize",
    "chi_from_unitary",
    "coincidence_prob_dip",
    "coincidence_prob_multiphase",
    "estimate_phases",
    "hwp",
    "learn_state",
    "normalize",
    "overlap",
    "parse_state",
    "qwp",
    "resolve_config",
    "root_fidelity",
    "run_config",
    "uniform_psi",
    "waveplates",
]
