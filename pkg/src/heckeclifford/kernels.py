"""Arithmetic backend selection.

Prefers the compiled extension, falls back to the pure-Python implementation.
Set HECKECLIFFORD_PURE=1 to force the fallback (used by the benchmark and by
tests that compare the two backends).
"""

import os

if os.environ.get("HECKECLIFFORD_PURE") == "1":
    from . import _pykernels as impl
else:
    try:
        from . import _ckernels as impl  # type: ignore[no-redef]
    except ImportError:
        from . import _pykernels as impl

BACKEND = impl.BACKEND
felem_normalize = impl.felem_normalize
felem_is_zero = impl.felem_is_zero
felem_neg = impl.felem_neg
felem_add = impl.felem_add
felem_sub = impl.felem_sub
felem_scale = impl.felem_scale
felem_mul = impl.felem_mul
felem_submul = impl.felem_submul
