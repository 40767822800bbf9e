"""Kernel selection.

The compiled extension is used when importable. Set
``HYPERSPECTRA_BACKEND=python`` to force the numpy fallback, or
``HYPERSPECTRA_BACKEND=compiled`` to fail loudly if the extension is missing.
"""

from __future__ import annotations

import os

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # not built
    _compiled = None

_choice = os.environ.get("HYPERSPECTRA_BACKEND", "auto").lower()
if _choice not in ("auto", "python", "compiled"):
    raise ImportError(f"HYPERSPECTRA_BACKEND must be auto, python or compiled, not {_choice!r}")
if _choice == "compiled" and _compiled is None:
    raise ImportError("HYPERSPECTRA_BACKEND=compiled but hyperspectra._kernels is not built")

if _compiled is not None and _choice != "python":
    kernels = _compiled
    BACKEND = "compiled"
else:
    kernels = _fallback
    BACKEND = "python"

COMPILED_AVAILABLE = _compiled is not None


def get(name: str):
    """Return the kernel module for ``name`` in {"compiled", "python"}."""
    if name == "python":
        return _fallback
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels not built")
        return _compiled
    raise ValueError(name)
