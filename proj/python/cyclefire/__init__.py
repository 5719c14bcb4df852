"""Cycle chip-firing on graphs: exact dual Laplacians, M-bases and z-superstables."""

from ._core import *  # noqa: F401,F403
from ._core import Error, Graph

__all__ = [name for name in dir() if not name.startswith("_")]
