"""Kernel backend selection.

Imports the compiled extension when present, otherwise the pure-Python
fallback.  `BACKEND` reports which one is active; `benchmarks/bench_kernels.py`
compares the two.
"""

try:
    from . import _kernels_c as _impl
except ImportError:  # pragma: no cover - depends on build environment
    from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
polymul_mod = _impl.polymul_mod
polymul_obj = _impl.polymul_obj
series_inv_mod = _impl.series_inv_mod
series_inv_obj = _impl.series_inv_obj
