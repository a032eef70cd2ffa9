"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``KGSYNTH_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py as python_kernels
from ._kernels_py import ANY, END, RUN

compiled_kernels = None
if not os.environ.get("KGSYNTH_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

_active = compiled_kernels or python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"

regex_search = _active.regex_search
longest_common_factor = _active.longest_common_factor

__all__ = [
    "ANY", "BACKEND", "END", "RUN",
    "compiled_kernels", "longest_common_factor", "python_kernels", "regex_search",
]
