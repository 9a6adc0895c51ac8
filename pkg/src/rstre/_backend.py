"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
twin.  ``RSTRE_BACKEND=python`` forces the fallback, ``RSTRE_BACKEND=cython``
makes a missing extension an import error.
"""
import os

from . import _pykernels

_requested = os.environ.get("RSTRE_BACKEND", "auto").lower()

if _requested == "python":
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        if _requested == "cython":
            raise
        kernels = _pykernels

BACKEND = "cython" if kernels is not _pykernels else "python"


def get_kernels(name=None):
    """Return a kernel module by name ("cython" or "python"); None means the
    active one."""
    if name is None:
        return kernels
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
