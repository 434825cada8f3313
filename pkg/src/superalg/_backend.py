"""Select the Grassmann kernel implementation once, at import time.

Prefers the compiled extension; falls back to the pure-Python module.  Set
SUPERALG_FORCE_PYTHON_KERNEL=1 to force the fallback (used by the kernel
benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("SUPERALG_FORCE_PYTHON_KERNEL"):
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as kernel

BACKEND = kernel.BACKEND
inversions = kernel.inversions
mul_into = kernel.mul_into
collect_terms = kernel.collect_terms
gather_terms = kernel.gather_terms
