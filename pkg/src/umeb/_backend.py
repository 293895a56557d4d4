"""Select the ascent kernel: compiled if importable, else numpy.

Set ``UMEB_PURE_PYTHON=1`` to force the numpy kernel.
"""

import os

from . import _ascent_py

python_kernel = _ascent_py

try:
    from . import _ascent as compiled_kernel
except ImportError:
    compiled_kernel = None

if compiled_kernel is not None and not os.environ.get("UMEB_PURE_PYTHON"):
    kernel = compiled_kernel
else:
    kernel = python_kernel

BACKEND = kernel.BACKEND


def get_kernel(name=None):
    """Kernel by name (``"cython"`` or ``"python"``); None means the default."""
    if name is None:
        return kernel
    if name == "python":
        return python_kernel
    if name == "cython":
        if compiled_kernel is None:
            raise ImportError("compiled kernel umeb._ascent is not built")
        return compiled_kernel
    raise ValueError(f"unknown backend {name!r}")
