"""Select the kernel implementation at import time.

Set ``DNLS_LAB_PURE_PYTHON=1`` to force the numpy fallback even when the
compiled extension is available.
"""

import os

if os.environ.get("DNLS_LAB_PURE_PYTHON") == "1":
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels

        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _kernels_py as kernels

        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
