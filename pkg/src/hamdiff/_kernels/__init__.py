"""Cycle-length kernels: compiled extension when available, pure Python
otherwise.

Set ``HAMDIFF_PURE=1`` to force the pure implementation (used by the
benchmark and by tests that compare the two).
"""

import os

from . import pure

if os.environ.get("HAMDIFF_PURE"):
    _impl = pure
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

IMPLEMENTATION = "pure" if _impl is pure else "cython"

cycle_length_mask = _impl.cycle_length_mask
union_cycle_mask = _impl.union_cycle_mask
row_union_cycle_masks = _impl.row_union_cycle_masks
