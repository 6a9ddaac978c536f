"""Successor-computation kernels: compiled core with pure-Python fallback.

The compiled Cython kernel is preferred when the extension built; setting
``NFACANON_PURE_PYTHON=1`` in the environment forces the fallback.  Both
backends expose the same interface and are cross-checked in the test suite.
"""

from __future__ import annotations

import os

from ..automata import Nfa
from ._pykernels import PySuccessorKernel

_BACKENDS = {"python": PySuccessorKernel}

if os.environ.get("NFACANON_PURE_PYTHON") != "1":
    try:
        from ._cwrap import CSuccessorKernel

        _BACKENDS["compiled"] = CSuccessorKernel
    except ImportError:
        pass


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def default_backend() -> str:
    return "compiled" if "compiled" in _BACKENDS else "python"


def successor_kernel(nfa: Nfa, backend: str | None = None):
    """Build a successor kernel for ``nfa`` using the given or best backend."""
    name = backend or default_backend()
    try:
        cls = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown kernel backend {name!r}; have {available_backends()}")
    return cls(nfa)
