"""Hot kernels with a compiled core and a numpy fallback.

The compiled extension is preferred when importable. Set the environment
variable ``PHOTONSTAT_BACKEND=python`` to force the numpy implementations.
"""
import os

from . import _pure

try:
    from . import _core
except ImportError:
    _core = None

BACKENDS = {"python": _pure}
if _core is not None:
    BACKENDS["compiled"] = _core

if os.environ.get("PHOTONSTAT_BACKEND", "").lower() == "python" or _core is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"

_NAMES = ("log_bunching_table", "cyclic_overlap_sums", "log_weight_moments", "scan_moments")


def set_backend(name: str) -> str:
    """Route the kernel functions to ``name``; returns the previous backend."""
    global BACKEND
    if name not in BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}")
    previous, BACKEND = BACKEND, name
    for attr in _NAMES:
        globals()[attr] = getattr(BACKENDS[name], attr)
    return previous


set_backend(BACKEND)

__all__ = [
    "BACKEND",
    "BACKENDS",
    "set_backend",
    "log_bunching_table",
    "cyclic_overlap_sums",
    "log_weight_moments",
    "scan_moments",
]
