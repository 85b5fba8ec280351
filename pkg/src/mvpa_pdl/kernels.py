"""Batch kernels: the compiled extension if it was built, else pure Python.

Set ``MVPA_PDL_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` names the
implementation in use.
"""

import os

from . import _kernels_py as fallback

compiled = None
if os.environ.get("MVPA_PDL_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

if compiled is not None:
    run_deterministic = compiled.run_deterministic
    min_phases_batch = compiled.min_phases_batch
    BACKEND = "cython"
else:
    run_deterministic = fallback.run_deterministic
    min_phases_batch = fallback.min_phases_batch
    BACKEND = "python"

__all__ = ["BACKEND", "compiled", "fallback", "run_deterministic",
           "min_phases_batch"]
