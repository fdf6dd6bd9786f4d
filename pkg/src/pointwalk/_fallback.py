"""Pure NumPy implementations of the two hot kernels.

These mirror the compiled versions in ``_speed.pyx`` exactly: the stencil
step produces the same field up to summation order, and the Monte Carlo
counter/decode pipeline is bit-identical (same uint64 hash, same uniform
construction, same alias decode), so counts agree integer-for-integer.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U53 = 2.0**-53
_MASK64 = (1 << 64) - 1


def mix64_int(z: int) -> int:
    """SplitMix64 finaliser on Python ints (exact mod 2^64)."""
    z &= _MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def counter_uniforms(seed0: int, counters: np.ndarray) -> np.ndarray:
    """Uniforms in [0, 1) addressed by absolute counter (uint64 array)."""
    z = _mix64(np.uint64(seed0) + counters * _GOLDEN)
    return (z >> np.uint64(11)).astype(np.float64) * _U53


def stencil_apply(src: np.ndarray, dst: np.ndarray, interior: np.ndarray,
                  offsets: np.ndarray, weights: np.ndarray) -> None:
    """dst[i] = sum_j weights[j] * src[i - offsets[j]] over interior indices.

    ``src``/``dst`` are flat views of the padded box; ``interior`` lists the
    flat indices of the core box so that i - offset never leaves the array.
    """
    dst[interior] = 0.0
    for off, w in zip(offsets, weights):
        dst[interior] += w * src[interior - off]


def _decode(u: np.ndarray, prob: np.ndarray, alias: np.ndarray) -> np.ndarray:
    """Alias-table decode: one uniform picks the bucket and the coin."""
    r = u * len(prob)
    idx = r.astype(np.int64)
    frac = r - idx
    return np.where(frac < prob[idx], idx, alias[idx])


def mc_counts(seed0: int, n_steps: int, traj0: int, ntraj: int,
              origin_table, free_table, dim: int, radius: int,
              counts: np.ndarray, chunk: int = 1 << 18) -> None:
    """Accumulate final-position counts for trajectories [traj0, traj0+ntraj).

    ``origin_table``/``free_table`` are (prob, alias, steps) triples; the
    origin table is consulted whenever the walker sits at the origin.
    ``counts`` is the flat (2*radius+1)^dim histogram, updated in place.
    """
    oprob, oalias, osteps = origin_table
    fprob, falias, fsteps = free_table
    side = 2 * radius + 1
    strides = np.array([side**k for k in range(dim - 1, -1, -1)], dtype=np.int64)
    seed0 = np.uint64(seed0)
    for lo in range(0, ntraj, chunk):
        m = min(chunk, ntraj - lo)
        traj = (np.arange(lo, lo + m, dtype=np.uint64) + np.uint64(traj0))
        base = traj * np.uint64(n_steps)
        pos = np.zeros((m, dim), dtype=np.int64)
        for step in range(n_steps):
            u = counter_uniforms(seed0, base + np.uint64(step))
            at_origin = ~pos.any(axis=1)
            io = np.nonzero(at_origin)[0]
            if io.size:
                pos[io] += osteps[_decode(u[io], oprob, oalias)]
            ifree = np.nonzero(~at_origin)[0]
            if ifree.size:
                pos[ifree] += fsteps[_decode(u[ifree], fprob, falias)]
        flat = (pos + radius) @ strides
        counts += np.bincount(flat, minlength=side**dim).astype(np.int64)
