"""Backend selection for the bitmask graph kernels.

The compiled extension is used when it imported cleanly; otherwise the
pure-Python module is used. Callers go through the module attributes
(``kernels.reach`` and friends) so :func:`set_backend` takes effect
everywhere at once.
"""

from __future__ import annotations

from lowcond import _pykernels

try:
    from lowcond import _ckernels
except ImportError:  # extension not built
    _ckernels = None

__all__ = [
    "BACKEND",
    "available_backends",
    "set_backend",
    "reach",
    "separates",
    "min_vertex_cut",
    "first_witness",
]

_MODULES = {"python": _pykernels}
if _ckernels is not None:
    _MODULES["cython"] = _ckernels


def available_backends() -> list[str]:
    return sorted(_MODULES)


def set_backend(name: str) -> None:
    """Switch every kernel to ``name`` ("cython" or "python")."""
    global BACKEND, reach, separates, min_vertex_cut, first_witness
    try:
        mod = _MODULES[name]
    except KeyError:
        raise ValueError(
            f"backend {name!r} unavailable; choose from {available_backends()}"
        ) from None
    BACKEND = name
    reach = mod.reach
    separates = mod.separates
    min_vertex_cut = mod.min_vertex_cut
    first_witness = mod.first_witness


BACKEND = ""
reach = separates = min_vertex_cut = first_witness = None
set_backend("cython" if _ckernels is not None else "python")
