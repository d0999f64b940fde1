"""Backend selection: compiled Cython kernels when available, numpy otherwise.

ARTINLAB_BACKEND=py forces the fallback, =ext requires the extension.
"""

from __future__ import annotations

import os


def _load():
    choice = os.environ.get("ARTINLAB_BACKEND", "auto")
    if choice not in ("auto", "ext", "py"):
        raise ValueError(f"ARTINLAB_BACKEND must be auto, ext or py (got {choice!r})")
    if choice in ("auto", "ext"):
        try:
            from . import _kernels as mod  # type: ignore[attr-defined]

            return mod
        except ImportError:
            if choice == "ext":
                raise
    from . import _kernels_py as mod

    return mod


kernels = _load()


def backend_name() -> str:
    """Name of the active kernel backend ('ext' or 'py')."""
    return kernels.BACKEND_NAME
