"""Shared fixtures and the brute-force path-enumeration oracle.

The oracle deliberately avoids arrays and convolutions: it enumerates every
step sequence of length n as a tuple, multiplies row weights as it walks,
and bins the endpoints in a dict.  Slow (|support|^n) but independent of
everything in the package, so agreement is meaningful.
"""

from __future__ import annotations

import itertools

import pytest

from pointwalk.kernels import SignedKernel, WalkSpec, validate


def brute_force(walk, n, mode="free", start=None):
    """Endpoint distribution by explicit path enumeration.

    mode: 'free' (kernel P everywhere), 'perturbed' (origin row at the
    origin, P elsewhere), 'taboo' (free steps, paths hitting the origin at
    times 1..n-1 dropped; arrival exactly at time n kept).
    Returns {site: probability}.
    """
    dim = walk.dim
    origin = (0,) * dim
    start = origin if start is None else tuple(start)
    free = dict(walk.free.entries)
    pert = dict(walk.origin_row.entries)
    support = sorted(set(free) | set(pert))
    out: dict[tuple, float] = {}
    for path in itertools.product(support, repeat=n):
        pos = start
        prob = 1.0
        alive = True
        for t, step in enumerate(path):
            row = pert if (mode == "perturbed" and pos == origin) else free
            w = row.get(step, 0.0)
            if w == 0.0:
                alive = False
                break
            prob *= w
            pos = tuple(p + s for p, s in zip(pos, step))
            if mode == "taboo" and pos == origin and t < n - 1:
                alive = False
                break
        if alive:
            out[pos] = out.get(pos, 0.0) + prob
    return out


def srw_1d():
    """Bare simple random walk on Z (periodic, no perturbation)."""
    return validate(WalkSpec(
        free=SignedKernel.from_entries(1, {(1,): 0.5, (-1,): 0.5})
    ))


def make_walk(dim, free, anti=None, sym=None, epsilon=0.0):
    spec = WalkSpec(
        free=SignedKernel.from_entries(dim, free),
        anti=SignedKernel.from_entries(dim, anti) if anti else None,
        sym=SignedKernel.from_entries(dim, sym) if sym else None,
        epsilon=epsilon,
    )
    return validate(spec)


@pytest.fixture(scope="session")
def lazy1d():
    from pointwalk.kernels import LAZY_1D
    return LAZY_1D()


@pytest.fixture(scope="session")
def nn2d():
    from pointwalk.kernels import NN_2D
    return NN_2D()


@pytest.fixture(scope="session")
def sym1d():
    from pointwalk.kernels import SYMMETRIC_1D
    return SYMMETRIC_1D()
