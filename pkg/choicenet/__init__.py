"""Exact recovery of masked labels with ReLU networks."""

from .utils import get_version

__version__ = get_version()

__all__ = ["__version__", "get_version"]
