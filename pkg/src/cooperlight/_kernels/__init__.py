"""Kernel backend selection.

The compiled extension is used when present; otherwise the NumPy fallback
takes over transparently.  Set the environment variable
COOPERLIGHT_FORCE_PURE (to any non-empty value) to skip the extension, for
testing or benchmarking the fallback.
"""

import os

from . import pure

if os.environ.get("COOPERLIGHT_FORCE_PURE"):
    impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _native as impl  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        impl = pure
        BACKEND = "pure"

__all__ = ["BACKEND", "impl", "pure"]
