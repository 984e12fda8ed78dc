"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used. Setting ``MVSPACETIME_PURE_PYTHON=1``
forces the fallback.
"""
import importlib
import os

_MODULES = {"compiled": "mvspacetime._ckernels", "python": "mvspacetime._pykernels"}


def load(name):
    """Import a backend module by name (``"compiled"`` or ``"python"``)."""
    try:
        return importlib.import_module(_MODULES[name])
    except KeyError:
        raise ValueError(f"unknown backend {name!r}") from None


def available():
    names = []
    for name in _MODULES:
        try:
            load(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _select():
    if os.environ.get("MVSPACETIME_PURE_PYTHON", "") not in ("", "0"):
        return "python", load("python")
    try:
        return "compiled", load("compiled")
    except ImportError:
        return "python", load("python")


BACKEND, kernels = _select()
