"""Backend selection: compiled extension when available, NumPy otherwise.

Set ``PWL_PURE=1`` to force the NumPy fallback even when the extension is
built.  Both backends share the deterministic counter-based RNG, so Monte
Carlo counts are identical either way; stencil results agree to rounding.
"""

from __future__ import annotations

import os

from . import _fallback

try:  # pragma: no cover - exercised implicitly by the import
    from . import _speed as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

if _compiled is not None and os.environ.get("PWL_PURE", "") not in ("", "0"):
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "numpy"


def stencil_apply(src, dst, interior, offsets, weights):
    if _compiled is not None:
        _compiled.stencil_apply(src, dst, interior, offsets, weights)
    else:
        _fallback.stencil_apply(src, dst, interior, offsets, weights)


def mc_counts(seed0, n_steps, traj0, ntraj, origin_table, free_table,
              dim, radius, counts):
    if _compiled is not None:
        oprob, oalias, osteps = origin_table
        fprob, falias, fsteps = free_table
        _compiled.mc_counts(seed0, n_steps, traj0, ntraj,
                            oprob, oalias, osteps, fprob, falias, fsteps,
                            dim, radius, counts)
    else:
        _fallback.mc_counts(seed0, n_steps, traj0, ntraj,
                            origin_table, free_table, dim, radius, counts)
