"""Select the tableau kernel backend at import time.

The compiled Cython kernels are used when the extension was built.  Setting
``EFFORGE_PURE_PYTHON=1`` forces the numpy fallback, which is also what
handles tableaus whose entries outgrow 64-bit integers.
"""

from __future__ import annotations

import os

from . import _kernels_py as python_kernels

compiled_kernels = None
if not os.environ.get("EFFORGE_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_kernels  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled_kernels = None

active = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND: str = active.BACKEND
