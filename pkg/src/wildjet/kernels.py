"""Backend selection for the truncated-polynomial kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``WILDJET_PURE_PYTHON`` is set, the pure-Python
implementation is used. Both expose ``mul_trunc(a, b, n, p)`` and
``inv_trunc(a, n, p)`` over lists of residues mod ``p``.
"""
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

mul_trunc = None
inv_trunc = None
BACKEND = None


def set_backend(name):
    """Switch every series operation to the named backend."""
    global mul_trunc, inv_trunc, BACKEND
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    mod = BACKENDS[name]
    mul_trunc = mod.mul_trunc
    inv_trunc = mod.inv_trunc
    BACKEND = name


set_backend("python" if os.environ.get("WILDJET_PURE_PYTHON") or _ckernels is None else "cython")
