"""Backend selection for the enumeration kernels.

The compiled Cython extension is preferred; the numpy fallback is selected
at import time when the extension is missing (e.g. a pure-python install).
Both expose the same two functions with identical observable behavior.
"""

from __future__ import annotations

try:
    from . import _kernels as _impl  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on build environment
    from . import _kernels_py as _impl

from . import _kernels_py

BACKEND: str = _impl.BACKEND
count_defined = _impl.count_defined
count_sat = _impl.count_sat

# The fallback stays importable for cross-checking and benchmarks.
py_count_defined = _kernels_py.count_defined
py_count_sat = _kernels_py.count_sat
