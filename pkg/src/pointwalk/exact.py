"""Exact finite-horizon evolution of free, perturbed and origin-avoiding walks.

All evolutions run on a dense box |x|_inf <= R with a hidden padding ring of
one step radius, so stencil reads never wrap.  With the default radius
R = n * max_step_radius the computation is an exact finite measure (no mass
ever reaches the padding); smaller boxes are allowed in non-strict mode and
simply lose the escaping mass.

Origin-avoiding ("taboo") fields follow the convention: the start at the
origin at time 0 is allowed, mass arriving at the origin at intermediate
times 1..n-1 is removed, and mass arriving at the origin at time n is kept
in the field's origin entry — it is exactly the first-return (or, for an
off-origin start, first-passage) mass at time n.
"""

from __future__ import annotations

import numpy as np

from . import _backend
from .errors import BoxTooSmall, CapExceeded
from .fields import MassField, ReturnSequence
from .kernels import Walk

__all__ = [
    "evolve_free",
    "evolve_perturbed",
    "evolve_taboo",
    "return_sequence",
    "first_return_sequence",
    "rho",
    "rho_direct",
    "RHO_DIRECT_CAP",
]

#: horizon cap for the combinatorial inclusion-exclusion evaluator
RHO_DIRECT_CAP = 24


class _Stepper:
    """Dense one-step evolution on a padded box, backend-dispatched."""

    def __init__(self, dim: int, radius: int, pad: int):
        self.dim = dim
        self.radius = radius
        self.pad = max(pad, 1)
        self.core_side = 2 * radius + 1
        self.side = self.core_side + 2 * self.pad
        shape = (self.side,) * dim
        self.shape = shape
        self.strides = np.array(
            [self.side**k for k in range(dim - 1, -1, -1)], dtype=np.int64
        )
        core_axes = [np.arange(self.pad, self.pad + self.core_side)] * dim
        mesh = np.meshgrid(*core_axes, indexing="ij")
        self.interior = np.ravel_multi_index(
            [m.ravel() for m in mesh], shape
        ).astype(np.int64)
        self.origin_flat = int(
            np.ravel_multi_index((self.pad + radius,) * dim, shape)
        )
        self.src = np.zeros(shape).ravel()
        self.dst = np.zeros(shape).ravel()

    def seed(self, at) -> None:
        self.src[:] = 0.0
        self.dst[:] = 0.0
        self.src[self.flat(at)] = 1.0

    def flat(self, x) -> int:
        x = np.atleast_1d(x)
        return int(np.dot(np.asarray(x, dtype=np.int64) + self.radius + self.pad,
                          self.strides))

    def kernel_arrays(self, kernel) -> tuple[np.ndarray, np.ndarray]:
        offsets = []
        weights = []
        for u, w in sorted(kernel.entries.items()):
            offsets.append(int(np.dot(np.asarray(u, dtype=np.int64), self.strides)))
            weights.append(w)
        return np.array(offsets, dtype=np.int64), np.array(weights)

    def step(self, offsets: np.ndarray, weights: np.ndarray) -> None:
        _backend.stencil_apply(self.src, self.dst, self.interior, offsets, weights)
        self.src, self.dst = self.dst, self.src

    def core(self) -> np.ndarray:
        sl = (slice(self.pad, self.pad + self.core_side),) * self.dim
        return self.src.reshape(self.shape)[sl].copy()

    def origin(self) -> float:
        return float(self.src[self.origin_flat])

    def zero_origin(self) -> None:
        self.src[self.origin_flat] = 0.0

    def stamp_origin_row(self, entries_flat, scale: float) -> None:
        """Add scale * w at origin+u for each perturbation entry (u, w)."""
        for off, w in entries_flat:
            self.src[self.origin_flat + off] += scale * w


def _resolve_radius(walk: Walk, n: int, radius: int | None, strict: bool,
                    offset: int = 0) -> int:
    needed = n * walk.max_step_radius() + offset
    if radius is None:
        return needed
    if strict and radius < needed:
        raise BoxTooSmall(
            f"radius {radius} cannot hold {n} steps of radius "
            f"{walk.max_step_radius()} (need {needed}); pass strict=False to truncate"
        )
    return radius


def _pert_entries_flat(walk: Walk, stepper: _Stepper):
    return [
        (int(np.dot(np.asarray(u, dtype=np.int64), stepper.strides)), w)
        for u, w in sorted(walk.perturbation.entries.items())
    ]


def evolve_free(walk: Walk, n: int, radius: int | None = None,
                strict: bool = True, history: bool = False):
    """n-step distribution P_n(0, .) of the free walk.

    With ``history=True`` returns the list [P_0, ..., P_n] instead.
    """
    radius = _resolve_radius(walk, n, radius, strict)
    st = _Stepper(walk.dim, radius, walk.max_step_radius())
    offs, ws = st.kernel_arrays(walk.free)
    st.seed((0,) * walk.dim)
    fields = [MassField(walk.dim, radius, 0, st.core())] if history else None
    for t in range(1, n + 1):
        st.step(offs, ws)
        if history:
            fields.append(MassField(walk.dim, radius, t, st.core()))
    if history:
        return fields
    return MassField(walk.dim, radius, n, st.core())


def evolve_perturbed(walk: Walk, n: int, radius: int | None = None,
                     strict: bool = True, history: bool = False):
    """n-step distribution of the perturbed walk started at the origin."""
    radius = _resolve_radius(walk, n, radius, strict)
    st = _Stepper(walk.dim, radius, walk.max_step_radius())
    offs, ws = st.kernel_arrays(walk.free)
    pert = _pert_entries_flat(walk, st)
    st.seed((0,) * walk.dim)
    fields = [MassField(walk.dim, radius, 0, st.core())] if history else None
    for t in range(1, n + 1):
        origin_mass = st.origin()
        st.step(offs, ws)
        if origin_mass != 0.0:
            st.stamp_origin_row(pert, origin_mass)
        if history:
            fields.append(MassField(walk.dim, radius, t, st.core()))
    if history:
        return fields
    return MassField(walk.dim, radius, n, st.core())


def evolve_taboo(walk: Walk, n: int, radius: int | None = None,
                 use_free: bool = True, start=None, strict: bool = True,
                 history: bool = False):
    """n-step origin-avoiding distribution (see module docstring).

    ``start`` defaults to the origin.  With ``use_free=False`` the first
    step out of an origin start uses the perturbed origin row; every later
    step is free either way, since surviving mass never sits at the origin.
    With ``history=True`` returns ``(fields, first_arrivals)`` where
    ``first_arrivals[t]`` is the origin-arrival mass at time t (index 0 is 0).
    """
    start = (0,) * walk.dim if start is None else tuple(int(c) for c in np.atleast_1d(start))
    radius = _resolve_radius(walk, n, radius, strict,
                             offset=max(abs(c) for c in start))
    st = _Stepper(walk.dim, radius, walk.max_step_radius())
    offs, ws = st.kernel_arrays(walk.free)
    at_origin_start = all(c == 0 for c in start)
    st.seed(start)
    pert = _pert_entries_flat(walk, st)
    fields = [MassField(walk.dim, radius, 0, st.core())] if history else None
    arrivals = np.zeros(n + 1)
    for t in range(1, n + 1):
        origin_mass = st.origin()
        st.step(offs, ws)
        if t == 1 and at_origin_start and not use_free:
            st.stamp_origin_row(pert, origin_mass)
        arrivals[t] = st.origin()
        if history:
            fields.append(MassField(walk.dim, radius, t, st.core()))
        if t < n:
            st.zero_origin()
    if history:
        return fields, arrivals
    return MassField(walk.dim, radius, n, st.core())


def return_sequence(walk: Walk, horizon: int, perturbed: bool = False,
                    radius: int | None = None) -> ReturnSequence:
    """Origin masses p_n = P_n(0,0) for n = 0..horizon.

    With ``perturbed=True`` the perturbed-walk origin masses are computed in
    the same pass and attached.
    """
    radius = _resolve_radius(walk, horizon, radius, strict=True)
    st = _Stepper(walk.dim, radius, walk.max_step_radius())
    offs, ws = st.kernel_arrays(walk.free)
    st.seed((0,) * walk.dim)
    values = np.zeros(horizon + 1)
    values[0] = 1.0
    for t in range(1, horizon + 1):
        st.step(offs, ws)
        values[t] = st.origin()
    pert_values = None
    if perturbed:
        st.seed((0,) * walk.dim)
        pert = _pert_entries_flat(walk, st)
        pert_values = np.zeros(horizon + 1)
        pert_values[0] = 1.0
        for t in range(1, horizon + 1):
            origin_mass = st.origin()
            st.step(offs, ws)
            if origin_mass != 0.0:
                st.stamp_origin_row(pert, origin_mass)
            pert_values[t] = st.origin()
    return ReturnSequence(horizon=horizon, values=values, perturbed=pert_values)


def first_return_sequence(walk: Walk, horizon: int, use_free: bool = True) -> np.ndarray:
    """First-return masses f_t, t = 0..horizon (f_0 = 0), of the free walk
    (or of the perturbed walk with ``use_free=False``)."""
    if horizon == 0:
        return np.zeros(1)
    _, arrivals = evolve_taboo(walk, horizon, use_free=use_free, history=True)
    return arrivals


def rho(walk: Walk, n: int, radius: int | None = None) -> MassField:
    """Mass that has revisited the origin: P_n(0,.) minus the origin-avoiding
    field, with the origin-avoiding value at the origin itself taken as zero
    (arrival at time n counts as a revisit)."""
    radius = _resolve_radius(walk, n, radius, strict=True)
    free = evolve_free(walk, n, radius)
    taboo = evolve_taboo(walk, n, radius, use_free=True)
    values = free.values - taboo.values
    origin_idx = (radius,) * walk.dim
    values[origin_idx] = free.values[origin_idx]
    return MassField(walk.dim, radius, n, values)


def rho_direct(walk: Walk, n: int, radius: int | None = None) -> MassField:
    """Inclusion-exclusion evaluation of the revisit mass, for x != 0 only.

    Expands over the ordered times of origin visits; the alternating sum is
    folded into the first-return decomposition recursion

        H_k = P_k(0,.) - sum_{j<k} p_{k-j} H_j,
        rho_n = sum_{k=1}^{n-1} p_{n-k} H_k,

    which uses free-walk data only (no origin-avoiding evolution), so it is
    an independent cross-check of :func:`rho`.  The origin entry is reported
    as zero; the convention there is fixed by the subtraction form.
    """
    if n > RHO_DIRECT_CAP:
        raise CapExceeded(
            f"direct inclusion-exclusion evaluator is capped at n = {RHO_DIRECT_CAP}"
        )
    radius = _resolve_radius(walk, n, radius, strict=True)
    free = evolve_free(walk, n, radius, history=True)
    p = np.array([f.origin_value for f in free])
    h = [None] * n  # h[k] for k = 1..n-1
    for k in range(1, n):
        acc = free[k].values.copy()
        for j in range(1, k):
            acc -= p[k - j] * h[j]
        h[k] = acc
    values = np.zeros_like(free[0].values)
    for k in range(1, n):
        values += p[n - k] * h[k]
    values[(radius,) * walk.dim] = 0.0
    return MassField(walk.dim, radius, n, values)
