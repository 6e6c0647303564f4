"""Python bindings for the generalized Yoshimura boom toolkit.

Angles are in degrees and lengths in the design's units, as on the command
line.  Omitting ``beta_degrees`` selects the golden-ratio design.
"""

import json

from . import _yoshimura as _core
from ._yoshimura import (
    AdmissibilityError,
    ConvergenceError,
    EmptyConfiguration,
    EmptyTarget,
    InvalidArgument,
    NoSolution,
    ParseError,
    ResourceLimit,
    Unsupported,
    YoshimuraError,
    chain_frames,
    golden_beta_degrees,
    pattern_svg,
    phi,
    transform,
)

__all__ = [
    "AdmissibilityError",
    "ConvergenceError",
    "EmptyConfiguration",
    "EmptyTarget",
    "InvalidArgument",
    "NoSolution",
    "ParseError",
    "ResourceLimit",
    "Unsupported",
    "YoshimuraError",
    "canonical_config",
    "chain_frames",
    "golden_beta_degrees",
    "gray_code",
    "match",
    "metrics",
    "pattern_svg",
    "phi",
    "shortest_transition",
    "solve",
    "transform",
    "workspace",
]

__version__ = "0.1.0"


def solve(pop_class="1pop", n=3, beta_degrees=None, L=1.0):
    return json.loads(_core.solve_json(pop_class, n=n, beta_degrees=beta_degrees, L=L))


def metrics(states, n=3, beta_degrees=None, L=1.0):
    return json.loads(_core.metrics_json(list(states), n=n, beta_degrees=beta_degrees, L=L))


def workspace(m, n=3, beta_degrees=None, L=1.0, dedup_tolerance=1e-9):
    return json.loads(
        _core.workspace_json(m, n=n, beta_degrees=beta_degrees, L=L, dedup_tolerance=dedup_tolerance)
    )


def gray_code(m):
    return json.loads(_core.gray_code_json(m))


def shortest_transition(source, target):
    return json.loads(_core.shortest_transition_json(source, target))


def match(m, target, mode="exhaustive", beam_width=64, top_k=10, n=3, beta_degrees=None, L=1.0):
    return json.loads(
        _core.match_json(
            m, json.dumps(target), mode=mode, beam_width=beam_width, top_k=top_k,
            n=n, beta_degrees=beta_degrees, L=L,
        )
    )


def canonical_config(document):
    """Canonical text of a configuration document given as text or a dict."""
    text = document if isinstance(document, str) else json.dumps(document)
    return _core.canonical_config(text)
