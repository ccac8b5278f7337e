"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy kernels in ``_pykernels``. Set ``WMCOMPRESS_BACKEND=python`` to force
the fallback.
"""
import importlib
import os

_MODULES = {"cython": "wmcompress._ckernels", "python": "wmcompress._pykernels"}


def load_kernels(name):
    """Import the kernel module for ``name`` ("cython" or "python")."""
    try:
        return importlib.import_module(_MODULES[name])
    except KeyError:
        raise ValueError(f"unknown backend {name!r}") from None


def available_backends():
    names = []
    for name in _MODULES:
        try:
            load_kernels(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _select():
    wanted = os.environ.get("WMCOMPRESS_BACKEND", "").strip().lower()
    if wanted:
        return load_kernels(wanted)
    try:
        return load_kernels("cython")
    except ImportError:
        return load_kernels("python")


kernels = _select()
BACKEND = kernels.NAME
