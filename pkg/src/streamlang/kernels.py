"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is.  Setting ``STREAMLANG_PURE_PYTHON=1``
forces the fallback.  Both modules expose the same names.
"""

from __future__ import annotations

import importlib
import os
from types import ModuleType

from streamlang import _pykernels


def load_backend(name: str) -> ModuleType:
    """Return the ``"c"`` or ``"python"`` kernel module (ImportError if unbuilt)."""
    if name == "python":
        return _pykernels
    if name == "c":
        return importlib.import_module("streamlang._ckernels")
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> list[str]:
    names = ["python"]
    try:
        load_backend("c")
    except ImportError:
        pass
    else:
        names.insert(0, "c")
    return names


def _select() -> tuple[str, ModuleType]:
    if os.environ.get("STREAMLANG_PURE_PYTHON", "") not in ("", "0"):
        return "python", _pykernels
    try:
        return "c", load_backend("c")
    except ImportError:
        return "python", _pykernels


BACKEND, _impl = _select()

RUNNING = _impl.RUNNING
ACCEPTED = _impl.ACCEPTED
REJECTED = _impl.REJECTED
NO_RULE = _impl.NO_RULE
NO_NT = _impl.NO_NT

is_prime = _impl.is_prime
fp_eval = _impl.fp_eval
DlinKernel = _impl.DlinKernel
DegSeqKernel = _impl.DegSeqKernel
window_subtract = _impl.window_subtract

REASONS = {
    _impl.R_NONE: None,
    _impl.R_NO_RULE: "no-rule",
    _impl.R_EPSILON_MISSING: "epsilon-missing",
    _impl.R_LEFTOVER: "leftover",
    _impl.R_PENDING: "pending-nonterminal",
    _impl.R_UNKNOWN_SYMBOL: "unknown-symbol",
    _impl.R_UNDERFLOW: "stack-underflow",
    _impl.R_VERTEX_RANGE: "vertex-out-of-range",
    _impl.R_MALFORMED: "malformed-stream",
    _impl.R_NONZERO: "nonzero-evaluation",
}
