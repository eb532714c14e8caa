"""Meaning-based math word problem solver."""

import os

from ._mwps import SolverError, __version__, train_models
from ._mwps import Solver as _Solver

_packaged_assets = os.path.join(os.path.dirname(__file__), "assets")


def Solver(asset_dir="", model_dir=""):
    """Build a solver; defaults to the packaged assets when none are given."""
    if not asset_dir and not os.environ.get("MWP_ASSETS") and os.path.isdir(_packaged_assets):
        asset_dir = _packaged_assets
    return _Solver(asset_dir, model_dir)


__all__ = ["Solver", "SolverError", "train_models", "__version__"]
