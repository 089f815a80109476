"""Hot-loop kernels with a compiled backend and a numpy fallback.

The compiled module is used when it was built and imports cleanly.  Set
``LINECONG_KERNELS=python`` to force the fallback (the benchmark and the
backend-agreement tests do this).
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("LINECONG_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

mul_exact = _impl.mul_exact
mul_batch_f64 = _impl.mul_batch_f64
mul_modp = _impl.mul_modp
rank_modp = _impl.rank_modp
rank_split_modp = _impl.rank_split_modp
cubic_real_roots = _impl.cubic_real_roots

__all__ = ["BACKEND", "mul_exact", "mul_batch_f64", "mul_modp", "rank_modp",
           "rank_split_modp", "cubic_real_roots"]
