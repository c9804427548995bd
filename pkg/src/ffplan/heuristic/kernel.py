"""Kernel selection: the compiled kernel when importable, else pure Python.

Set ``FFPLAN_PURE=1`` to force the fallback.
"""

import os

from ._pykernel import UNREACHED, PyKernel

Kernel = PyKernel
COMPILED = False

if os.environ.get("FFPLAN_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._ckernel import CKernel as Kernel  # type: ignore[assignment]

        COMPILED = True
    except ImportError:
        pass

__all__ = ["COMPILED", "Kernel", "PyKernel", "UNREACHED"]
