"""Row-reduction kernel selection.

Imports the compiled kernel when available, otherwise the pure-Python
fallback.  Set ``PERSPLIT_PURE=1`` to force the fallback (used by the
benchmark and by tests comparing the two).
"""

import os

if os.environ.get("PERSPLIT_PURE"):
    from .echelon_py import BACKEND, rref_rows
else:
    try:
        from ._echelon import BACKEND, rref_rows  # type: ignore[attr-defined]
    except ImportError:
        from .echelon_py import BACKEND, rref_rows

__all__ = ["BACKEND", "rref_rows"]
