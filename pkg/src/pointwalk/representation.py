"""Closed-form representations of the perturbed-walk distribution.

Every formula here rebuilds Pi_n(0, .) out of free-walk data (free fields,
return probabilities, origin-avoiding fields) and is checked against the
direct dynamic-programming evolution.  The two parity sectors have separate
representations:

* antisymmetric perturbation (c = a, a(-u) = -a(u)): first-return
  decomposition plus a convolution series, :func:`pi_antisymmetric`;
* symmetric perturbation (c = eps * s, s(-u) = s(u)): a composition-series
  recursion over origin visits, :func:`pi_symmetric`.

A discrete characteristic-function inversion gives a third, Fourier-side
route to the same field.
"""

from __future__ import annotations

import numpy as np

from .errors import CapExceeded, GridTooSmall, WrongParity
from .exact import evolve_free, evolve_perturbed, evolve_taboo, return_sequence
from .fields import MassField
from .kernels import SignedKernel, Walk

__all__ = [
    "convolution_series",
    "pi_antisymmetric",
    "pi_symmetric",
    "convolution_identity_check",
    "fourier_inversion_check",
    "characteristic_decay_rate",
    "PI_SYMMETRIC_CAP",
]

#: horizon cap for the symmetric composition series (cost, not correctness)
PI_SYMMETRIC_CAP = 16


def _require_pure_antisymmetric(walk: Walk) -> None:
    if walk.epsilon != 0.0 and walk.sym.entries:
        raise WrongParity(
            "this representation holds for antisymmetric perturbations only; "
            "the kernel carries a symmetric part"
        )


def shift_field(values: np.ndarray, y) -> np.ndarray:
    """Array of g(x - y) from an array of g(x), zero-filled at the edges.

    Exact whenever g vanishes outside the box by more than |y| (true for
    n-step fields held in boxes of radius >= n * step radius).
    """
    out = np.zeros_like(values)
    src = []
    dst = []
    for axis, c in enumerate(np.atleast_1d(y)):
        size = values.shape[axis]
        c = int(c)
        if abs(c) >= size:
            return out
        if c >= 0:
            dst.append(slice(c, size))
            src.append(slice(0, size - c))
        else:
            dst.append(slice(0, size + c))
            src.append(slice(-c, size))
    out[tuple(dst)] = values[tuple(src)]
    return out


def _kernel_convolve(kernel: SignedKernel, values: np.ndarray) -> np.ndarray:
    """(kernel * g)(x) = sum_y kernel(y) g(x - y), zero-filled shifts."""
    out = np.zeros_like(values)
    for u, w in sorted(kernel.entries.items()):
        out += w * shift_field(values, u)
    return out


def convolution_series(walk: Walk, horizon: int,
                       radius: int | None = None) -> list[MassField]:
    """Fields (a * P_k)(.) for k = 0..horizon, on a common box."""
    if radius is None:
        radius = horizon * walk.max_step_radius()
    free = evolve_free(walk, horizon, radius, history=True)
    return [
        MassField(walk.dim, radius, k,
                  _kernel_convolve(walk.anti, free[k].values))
        for k in range(horizon + 1)
    ]


def pi_antisymmetric(walk: Walk, n: int, radius: int | None = None) -> MassField:
    """Perturbed field from the first-return decomposition,

        Pi_n(0,x) = P_n(0,x) + sum_{k=0}^{n-1} p_k (a * P_{n-k-1})(x),

    valid for purely antisymmetric perturbations.  The convolution reads
    (a*g)(x) = sum_y a(y) g(x-y); the n = 1 case pins the orientation.
    """
    _require_pure_antisymmetric(walk)
    if radius is None:
        radius = n * walk.max_step_radius()
    free = evolve_free(walk, n, radius, history=True)
    p = np.array([f.origin_value for f in free])
    values = free[n].values.copy()
    for k in range(n):
        values += p[k] * _kernel_convolve(walk.anti, free[n - k - 1].values)
    return MassField(walk.dim, radius, n, values)


def convolution_identity_check(walk: Walk, n: int,
                               radius: int | None = None) -> float:
    """Max over k <= n and x of |(a * taboo P0_k)(x) - (a * P_k)(x)|.

    Here (a * P0_k)(x) = sum_y a(y) P0_k(y, x) runs over origin-avoiding
    fields started at the support points of a; antisymmetry of a kills the
    first-passage cross terms, making the two convolutions equal.  The
    identity has no symmetric analogue, so kernels with a symmetric part
    are refused.
    """
    if walk.epsilon != 0.0 and walk.sym.entries:
        raise WrongParity(
            "the vanishing-contribution identity requires an antisymmetric "
            "perturbation; symmetric parts do not cancel"
        )
    if not walk.anti.entries:
        return 0.0
    rmax = walk.max_step_radius()
    radius = (n + 1) * rmax if radius is None else radius
    free = evolve_free(walk, n, radius, history=True)
    taboo = {
        u: evolve_taboo(walk, n, radius, start=u, history=True)[0]
        for u in walk.anti.entries
    }
    worst = 0.0
    for k in range(n + 1):
        lhs = np.zeros_like(free[0].values)
        rhs = np.zeros_like(free[0].values)
        for u, w in sorted(walk.anti.entries.items()):
            lhs += w * taboo[u][k].values
            rhs += w * shift_field(free[k].values, u)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def pi_symmetric(walk: Walk, n: int, radius: int | None = None) -> MassField:
    """Perturbed field for a purely symmetric perturbation c = eps * s.

    Decomposing a path by its origin visits gives a composition series over
    excursions; folding it into generating-function form yields

        w_k = eps * (s * P_{k-1})(0),          k = 1..n
        g_m = w_m + sum_{j<m} w_j g_{m-j}      (composition weights)
        h_l = sum_{m<=l} p_{l-m} g_m           (origin-mass excess)

        Pi_n(0,x) = P_n(0,x) + sum_{l=1}^{n-1} h_l P0_{n-l}(0,x)
                    + eps * sum_{l=0}^{n-1} (p_l + h_l)
                          * sum_{u != 0} s(u) T_{n-l-1}(u, x)  (x != 0)
        Pi_n(0,0) = p_n + h_n,

    with T_m(u, .) the origin-avoiding field started at u (T_0 the point
    mass at u).  The leg after the last origin visit keeps only steps to
    u != 0 — a first step that stays put is itself a revisit — while the
    origin series w/g/h runs over the full support of s.  Cost grows as
    O(n^2) field operations; capped at PI_SYMMETRIC_CAP.
    """
    if walk.anti.entries:
        raise WrongParity(
            "this representation holds for symmetric perturbations only; "
            "the kernel carries an antisymmetric part"
        )
    if n > PI_SYMMETRIC_CAP:
        raise CapExceeded(
            f"symmetric composition series is capped at n = {PI_SYMMETRIC_CAP}"
        )
    eps = walk.epsilon
    if n == 0 or eps == 0.0 or not walk.sym.entries:
        return evolve_free(walk, n, radius) if radius is not None \
            else evolve_free(walk, n)
    rmax = walk.max_step_radius()
    radius = n * rmax if radius is None else radius

    free = evolve_free(walk, n, radius, history=True)
    p = np.array([f.origin_value for f in free])

    # composition weights over origin-to-origin legs
    s_items = sorted(walk.sym.entries.items())
    w = np.zeros(n + 1)
    for k in range(1, n + 1):
        w[k] = eps * sum(
            wt * free[k - 1].value_at(u) for u, wt in s_items
        )
    g = np.zeros(n + 1)
    for m in range(1, n + 1):
        g[m] = w[m] + sum(w[j] * g[m - j] for j in range(1, m))
    h = np.zeros(n + 1)
    for ell in range(1, n + 1):
        h[ell] = sum(p[ell - m] * g[m] for m in range(1, ell + 1))

    # origin-avoiding legs: from the origin, and from each off-origin
    # support point of s (a first step that stays at the origin is a revisit)
    s_away = [(u, wt) for u, wt in s_items if any(c != 0 for c in u)]
    taboo0 = evolve_taboo(walk, n, radius, history=True)[0]
    taboo_from = {
        u: evolve_taboo(walk, n - 1, radius, start=u, history=True)[0]
        for u, _ in s_away
    }

    values = free[n].values.copy()
    for ell in range(1, n):
        values += h[ell] * taboo0[n - ell].values
    for ell in range(n):
        leg = np.zeros_like(values)
        for u, wt in s_away:
            leg += wt * taboo_from[u][n - ell - 1].values
        values += eps * (p[ell] + h[ell]) * leg
    values[(radius,) * walk.dim] = p[n] + h[n]
    return MassField(walk.dim, radius, n, values)


def _grid_frequencies(dim: int, grid_size: int) -> list[np.ndarray]:
    """Principal-branch angular frequencies per axis, broadcast-ready."""
    lam = 2.0 * np.pi * np.fft.fftfreq(grid_size)
    out = []
    for axis in range(dim):
        shape = [1] * dim
        shape[axis] = grid_size
        out.append(lam.reshape(shape))
    return out


def _kernel_transform(kernel: SignedKernel, dim: int, grid_size: int) -> np.ndarray:
    """DFT symbol of a lattice kernel on the discrete frequency grid."""
    embed = np.zeros((grid_size,) * dim)
    for u, w in kernel.entries.items():
        embed[tuple(c % grid_size for c in u)] += w
    return np.fft.fftn(embed)


def fourier_inversion_check(walk: Walk, n: int, grid_size: int) -> float:
    """Assemble the perturbed characteristic function on a discrete grid,

        phi_n = Ptilde^n + atilde * sum_{m=0}^{n-1} p_{n-1-m} Ptilde^m,

    invert it, and return the max deviation from the direct evolution.
    The grid must resolve the reachable box (period >= 2 n rmax + 1),
    otherwise aliasing folds distinct sites together.
    """
    _require_pure_antisymmetric(walk)
    reach = n * walk.max_step_radius()
    if grid_size < 2 * reach + 1:
        raise GridTooSmall(
            f"grid {grid_size} aliases the n = {n} reachable box "
            f"(need at least {2 * reach + 1})"
        )
    p = return_sequence(walk, n).values
    pt = _kernel_transform(walk.free, walk.dim, grid_size)
    at = _kernel_transform(walk.anti, walk.dim, grid_size)

    phi = pt**n
    if walk.anti.entries:
        geom = np.zeros_like(pt)
        power = np.ones_like(pt)
        for m in range(n):
            geom += p[n - 1 - m] * power
            power = power * pt
        phi = phi + at * geom

    grid_field = np.fft.ifftn(phi)
    dp = evolve_perturbed(walk, n, reach)
    worst = float(np.max(np.abs(grid_field.imag)))
    seen = np.zeros(grid_field.shape, dtype=bool)
    for x in dp.sites():
        idx = tuple(c % grid_size for c in x)
        seen[idx] = True
        worst = max(worst, abs(float(grid_field.real[idx]) - dp.value_at(x)))
    worst = max(worst, float(np.max(np.abs(grid_field.real[~seen]))))
    return worst


def characteristic_decay_rate(walk: Walk, grid_size: int = 256) -> float:
    """Largest gamma with |Ptilde(lambda)| <= exp(-gamma |lambda|^2) on the
    grid (lambda != 0); positive for aperiodic kernels.  Taking the k-th
    power of both sides extends the bound to |Ptilde^k| for every k >= 1.
    """
    pt = _kernel_transform(walk.free, walk.dim, grid_size)
    lam = _grid_frequencies(walk.dim, grid_size)
    lam_sq = np.zeros(pt.shape)
    for component in lam:
        lam_sq = lam_sq + component**2
    mod = np.abs(pt)
    mask = lam_sq > 0
    with np.errstate(divide="ignore"):
        rates = -np.log(mod[mask]) / lam_sq[mask]
    rates = rates[np.isfinite(rates)]
    return float(np.min(rates))
