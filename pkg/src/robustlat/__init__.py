"""Executable order theory and weak-* closure oracles for sequence spaces."""
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
