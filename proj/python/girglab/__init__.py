"""Geometric inhomogeneous random graphs: sampling, strips, expansion and spreading."""

from ._core import *  # noqa: F401,F403
from ._core import Geometry, Graph, ModelParams, run_experiment

__all__ = [name for name in dir() if not name.startswith("_")]
