"""Integer kernels with a compiled backend and a pure-Python fallback.

The compiled module is used when it imports; setting the environment
variable ``CMUNITS_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _pyfallback as python_backend

compiled_backend = None
if os.environ.get("CMUNITS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:
        compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

bernoulli_mod_p = _impl.bernoulli_mod_p
gen_bernoulli_mod_p = _impl.gen_bernoulli_mod_p
nu_class_sums = _impl.nu_class_sums

__all__ = [
    "BACKEND",
    "bernoulli_mod_p",
    "gen_bernoulli_mod_p",
    "nu_class_sums",
    "python_backend",
    "compiled_backend",
]
