# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: dense stencil step and Monte Carlo trajectories.

Kept in lock-step with ``_fallback.py``; the Monte Carlo path must produce
bit-identical counts (same SplitMix64 counter hash, same uniform mapping,
same alias decode).
"""

from libc.stdint cimport int64_t, uint64_t

import numpy as np


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline double _uniform(uint64_t seed0, uint64_t counter) nogil:
    cdef uint64_t z = _mix64(seed0 + counter * <uint64_t>0x9E3779B97F4A7C15)
    return <double>(z >> 11) * (1.0 / 9007199254740992.0)


def stencil_apply(double[::1] src, double[::1] dst, int64_t[::1] interior,
                  int64_t[::1] offsets, double[::1] weights):
    """dst[i] = sum_j weights[j] * src[i - offsets[j]] for i in interior."""
    cdef Py_ssize_t t, j, n = interior.shape[0], k = offsets.shape[0]
    cdef int64_t i
    cdef double acc
    with nogil:
        for t in range(n):
            i = interior[t]
            acc = 0.0
            for j in range(k):
                acc += weights[j] * src[i - offsets[j]]
            dst[i] = acc


def mc_counts(uint64_t seed0, int n_steps, int64_t traj0, int64_t ntraj,
              double[::1] oprob, int64_t[::1] oalias, int64_t[:, ::1] osteps,
              double[::1] fprob, int64_t[::1] falias, int64_t[:, ::1] fsteps,
              int dim, int64_t radius, int64_t[::1] counts):
    """Accumulate final-position counts for trajectories [traj0, traj0+ntraj)."""
    cdef int64_t traj, flat, side = 2 * radius + 1
    cdef int step, d
    cdef int64_t pos[8]
    cdef int64_t strides[8]
    cdef uint64_t base
    cdef double u, r, frac
    cdef int64_t idx, ko = oprob.shape[0], kf = fprob.shape[0]
    cdef bint at_origin

    if dim > 8:
        raise ValueError("compiled Monte Carlo supports dim <= 8")
    strides[dim - 1] = 1
    for d in range(dim - 2, -1, -1):
        strides[d] = strides[d + 1] * side

    with nogil:
        for traj in range(traj0, traj0 + ntraj):
            for d in range(dim):
                pos[d] = 0
            base = <uint64_t>traj * <uint64_t>n_steps
            for step in range(n_steps):
                u = _uniform(seed0, base + <uint64_t>step)
                at_origin = True
                for d in range(dim):
                    if pos[d] != 0:
                        at_origin = False
                        break
                if at_origin:
                    r = u * ko
                    idx = <int64_t>r
                    frac = r - idx
                    if frac >= oprob[idx]:
                        idx = oalias[idx]
                    for d in range(dim):
                        pos[d] += osteps[idx, d]
                else:
                    r = u * kf
                    idx = <int64_t>r
                    frac = r - idx
                    if frac >= fprob[idx]:
                        idx = falias[idx]
                    for d in range(dim):
                        pos[d] += fsteps[idx, d]
            flat = 0
            for d in range(dim):
                flat += (pos[d] + radius) * strides[d]
            counts[flat] += 1
