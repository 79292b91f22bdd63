"""Kernel backend selection.

The batched integrand kernels exist twice: a Cython extension
(``ballgrad._kernels``) and a pure-numpy fallback (``_kernels_py``).
At import time the compiled module is preferred when present; the
environment variable ``BALLGRAD_BACKEND`` (``compiled`` or ``python``)
overrides, and :func:`select` switches at runtime (used by the
benchmark and the backend-equivalence tests).
"""

import os

from . import _kernels_py

_active = None


def _load(name):
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _kernels  # may raise ImportError
        return _kernels
    raise ValueError(f"unknown backend {name!r} (expected 'compiled' or 'python')")


def _default():
    forced = os.environ.get("BALLGRAD_BACKEND")
    if forced:
        return _load(forced)
    try:
        return _load("compiled")
    except ImportError:
        return _kernels_py


def get_backend():
    """Return the active kernel module."""
    global _active
    if _active is None:
        _active = _default()
    return _active


def backend_name():
    return get_backend().BACKEND_NAME


def select(name):
    """Force a backend by name; returns the module now active."""
    global _active
    _active = _load(name)
    return _active
