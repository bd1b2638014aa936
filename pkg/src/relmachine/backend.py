"""Kernel backend selection: compiled extension when present, numpy otherwise.

Set RELMACHINE_BACKEND=python to force the fallback, =compiled to require the
extension (raising if it is missing). Both backends share the same call
signatures and column order; they agree to ~1e-13 and tests compare them.
"""

from __future__ import annotations

import os

from ._kernels_py import COLUMNS

__all__ = ["COLUMNS", "REGIME_NAMES", "backend_name", "kernels"]

REGIME_NAMES = ("idle", "refrigerator", "engine", "accelerator")


def _load():
    forced = os.environ.get("RELMACHINE_BACKEND", "").strip().lower()
    if forced in ("python", "pure", "fallback"):
        from . import _kernels_py
        return _kernels_py, "python"
    try:
        from . import _kernels
        return _kernels, "compiled"
    except ImportError:
        if forced in ("compiled", "cython", "c"):
            raise RuntimeError("RELMACHINE_BACKEND=compiled but the extension "
                               "is not built; run `python setup.py build_ext "
                               "--inplace` or reinstall") from None
        from . import _kernels_py
        return _kernels_py, "python"


_KERNELS, _NAME = _load()


def kernels():
    """Active kernel module (eval_cycle, beta_eff_products, ...)."""
    return _KERNELS


def backend_name() -> str:
    return _NAME
