"""Finite partial dynamical systems, their reversible extensions and covariance algebras."""

__version__ = "0.1.0"

from .core import PartialSystem, validate  # noqa: E402
from .errors import PDSError  # noqa: E402

__all__ = ["PartialSystem", "PDSError", "validate", "__version__"]
