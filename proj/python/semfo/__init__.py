"""Semiring semantics for first-order logic, arithmetic circuits and machines.

Documents (interpretations, circuits, programs) are JSON strings in the same
formats the ``semfo`` command-line tool reads; elements are strings such as
``"3"``, ``"inf"`` or ``"x^2 + y"``.
"""

from ._core import *  # noqa: F401,F403
from ._core import Error

__all__ = [name for name in dir() if not name.startswith("_")]
