"""Finite ring workbench: Cayley-table rings and central Delta decompositions."""

import json

from ._core import (
    CdeltaError,
    Ring,
    __version__,
    build,
    check_ids,
    decode_cache,
    encode_cache,
    normalize,
    run_check,
    run_cli,
)
from . import _core


def analyze(expression, full_sets=False, order_cap=65536):
    """Analysis report of a ring expression, as a dict."""
    return json.loads(_core.analyze_json(expression, full_sets, order_cap))


def decompose(expression, element, kind="cdelta", order_cap=65536):
    """Decomposition witness for one element, as a dict."""
    return json.loads(_core.decompose_json(expression, element, kind, order_cap))


__all__ = [
    "CdeltaError",
    "Ring",
    "__version__",
    "analyze",
    "build",
    "check_ids",
    "decode_cache",
    "decompose",
    "encode_cache",
    "normalize",
    "run_check",
    "run_cli",
]
