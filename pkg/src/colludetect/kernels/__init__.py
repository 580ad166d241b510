"""Grid-scan kernels with a compiled fast path.

The compiled extension is used when it was built at install time; otherwise
the numpy fallback is selected.  Both produce bit-identical results.  Set
``COLLUDETECT_FORCE_FALLBACK=1`` to force the numpy path (used by the
benchmark and the backend-equivalence tests).
"""

import os

from . import _fallback

if os.environ.get("COLLUDETECT_FORCE_FALLBACK") == "1":
    _impl = _fallback
else:
    try:
        from . import _gridscan as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _fallback

BACKEND = "compiled" if _impl is not _fallback else "fallback"

grid_1d = _impl.grid_1d
residual_grid_candidates = _impl.residual_grid_candidates
joint_grid_argmax = _impl.joint_grid_argmax
