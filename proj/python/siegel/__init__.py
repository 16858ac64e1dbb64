"""Siegel-metric curvature of curves along Schiffer variations."""

import json

from ._siegel import (
    ChartPoint,
    Curve,
    Frame,
    Quadrics,
    SiegelError,
    __version__,
    build_frame,
    class_constant,
    i2_basis,
    mu2_rank,
    mu2_values,
    psi,
    sectional_H,
    siegel_sectional,
)
from . import _siegel


def analyze(spec, sweep="special", tol=1e-7, seed=1, cache_dir=""):
    """Run the full pipeline; spec is a curve JSON string or a dict."""
    if not isinstance(spec, str):
        spec = json.dumps(spec)
    return json.loads(_siegel.analyze_json(spec, sweep, tol, seed, cache_dir))


def acceptance(only=(), slow=False, cache_dir=""):
    return json.loads(_siegel.acceptance_json(list(only), slow, cache_dir))


__all__ = [
    "ChartPoint",
    "Curve",
    "Frame",
    "Quadrics",
    "SiegelError",
    "__version__",
    "acceptance",
    "analyze",
    "build_frame",
    "class_constant",
    "i2_basis",
    "mu2_rank",
    "mu2_values",
    "psi",
    "sectional_H",
    "siegel_sectional",
]
