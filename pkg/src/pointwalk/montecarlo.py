"""Trajectory sampling of the perturbed walk (the statistical oracle).

Randomness is counter-based: the uniform driving step `step` of trajectory
`traj` is a 64-bit hash of (seed, traj * n + step), so the stream is
identical no matter how trajectories are sharded across threads or chunked
inside a backend, and a fixed seed reproduces counts bit-for-bit.  Step
draws decode through Walker alias tables with a single uniform each.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend
from ._fallback import mix64_int
from .errors import ValidationError
from .fields import MassField
from .kernels import SignedKernel, Walk

__all__ = ["EmpiricalField", "alias_table", "sample", "drift_estimate",
           "coverage_check"]


def alias_table(kernel: SignedKernel):
    """Walker/Vose alias decomposition of a probability kernel.

    Returns (prob, alias, steps): a uniform u maps to slot i = floor(u*K)
    and takes steps[i] if the fractional part is below prob[i], else
    steps[alias[i]].
    """
    items = sorted(kernel.entries.items())
    if not items:
        raise ValidationError("cannot sample from an empty kernel")
    weights = np.array([w for _, w in items], dtype=float)
    if np.any(weights < 0.0) or abs(float(weights.sum()) - 1.0) > 1e-9:
        raise ValidationError("alias sampling needs a probability kernel")
    steps = np.array([u for u, _ in items], dtype=np.int64)
    k = len(items)
    scaled = weights * k
    prob = np.ones(k)
    alias = np.arange(k, dtype=np.int64)
    small = [i for i in range(k) if scaled[i] < 1.0]
    large = [i for i in range(k) if scaled[i] >= 1.0]
    while small and large:
        s = small.pop()
        g = large.pop()
        prob[s] = scaled[s]
        alias[s] = g
        scaled[g] += scaled[s] - 1.0
        (small if scaled[g] < 1.0 else large).append(g)
    return prob, alias, steps


@dataclass(frozen=True)
class EmpiricalField:
    """Endpoint counts of independent perturbed-walk trajectories."""

    dim: int
    radius: int
    n: int
    samples: int
    seed: int
    counts: np.ndarray  # dense, indexed like MassField.values

    def __post_init__(self):
        if int(self.counts.sum()) != self.samples:
            raise ValidationError("trajectory counts do not add up")

    def _index(self, x) -> tuple:
        x = tuple(int(c) for c in np.atleast_1d(x))
        if len(x) != self.dim:
            raise ValidationError(f"site {x} has wrong dimension")
        if any(abs(c) > self.radius for c in x):
            raise ValidationError(f"site {x} outside box of radius {self.radius}")
        return tuple(c + self.radius for c in x)

    def count_at(self, x) -> int:
        return int(self.counts[self._index(x)])

    def estimate(self, x) -> float:
        return self.count_at(x) / self.samples

    def stderr(self, x) -> float:
        p = self.estimate(x)
        return math.sqrt(p * (1.0 - p) / self.samples)

    def estimates(self) -> MassField:
        return MassField(self.dim, self.radius, self.n,
                         self.counts.astype(float) / self.samples)

    def sites(self):
        return self.estimates().sites()


def _thread_count(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("PWL_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def sample(walk: Walk, n: int, samples: int, seed: int = 0,
           threads: int | None = None) -> EmpiricalField:
    """Run `samples` independent n-step trajectories from the origin.

    The step row is the perturbed origin row whenever the walker sits at
    the origin and the free row elsewhere.  Sharding across threads leaves
    the counts bit-identical to a serial run.
    """
    if samples < 1:
        raise ValidationError("need at least one trajectory")
    radius = n * walk.max_step_radius()
    shape = (2 * radius + 1,) * walk.dim
    origin_table = alias_table(walk.origin_row)
    free_table = alias_table(walk.free)
    seed0 = mix64_int(seed)
    threads = _thread_count(threads)

    def run_shard(traj0: int, ntraj: int) -> np.ndarray:
        counts = np.zeros(int(np.prod(shape)), dtype=np.int64)
        if ntraj > 0:
            _backend.mc_counts(seed0, n, traj0, ntraj, origin_table,
                               free_table, walk.dim, radius, counts)
        return counts

    if threads == 1 or samples < 2 * threads:
        counts = run_shard(0, samples)
    else:
        bounds = np.linspace(0, samples, threads + 1).astype(np.int64)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda se: run_shard(int(se[0]), int(se[1] - se[0])),
                zip(bounds[:-1], bounds[1:]),
            ))
        counts = np.sum(parts, axis=0)
    return EmpiricalField(
        dim=walk.dim, radius=radius, n=n, samples=samples, seed=seed,
        counts=counts.reshape(shape),
    )


def drift_estimate(field: EmpiricalField) -> np.ndarray:
    """Mean endpoint sum_x x * estimate(x)."""
    axes_sums = np.zeros(field.dim)
    coords = np.arange(-field.radius, field.radius + 1, dtype=float)
    for axis in range(field.dim):
        other = tuple(i for i in range(field.dim) if i != axis)
        marginal = field.counts.sum(axis=other) if other else field.counts
        axes_sums[axis] = float(np.dot(coords, marginal)) / field.samples
    return axes_sums


def coverage_check(walk: Walk, n: int, samples: int, seeds,
                   sites, reference: MassField) -> np.ndarray:
    """For each seed, sample and test every site against its reference
    probability with a 4-sigma known-p binomial interval; returns the
    per-site count of covering runs (shape: len(sites),)."""
    sites = [tuple(int(c) for c in np.atleast_1d(s)) for s in sites]
    hits = np.zeros(len(sites), dtype=np.int64)
    for seed in seeds:
        field = sample(walk, n, samples, seed=seed)
        for i, site in enumerate(sites):
            p = reference.value_at(site)
            half_width = 4.0 * math.sqrt(p * (1.0 - p) / samples)
            if abs(field.estimate(site) - p) <= half_width:
                hits[i] += 1
    return hits
