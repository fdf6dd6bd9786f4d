"""Named verification checks driven by both the CLI and the test suite.

Each check exercises one advertised property of the package at full desk
scale and reports a measured number against its bound.  Composite checks
(several sub-bounds under one property) normalise each part by its own
tolerance and report the worst slack, so `measured <= bound` always means
"every part passed".
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .asymptotics import (
    calibrate_delta,
    delta_closed,
    delta_quadrature,
    delta_sum,
    exact_correction,
    appendix_bound_check,
    psi_tail_check,
    DELTA_CALIBRATION,
)
from .exact import evolve_perturbed, return_sequence
from .kernels import LAZY_1D, LAZY_2D, LAZY_3D, NN_2D, SYMMETRIC_1D, moments
from .montecarlo import coverage_check, sample
from .representation import (
    characteristic_decay_rate,
    convolution_identity_check,
    fourier_inversion_check,
    pi_antisymmetric,
    pi_symmetric,
)

__all__ = ["CheckResult", "run_checks", "check_names", "CHECKS"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    bound: float
    comparison: str
    seconds: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name}: measured {self.measured:.6g} "
                f"{self.comparison} {self.bound:g} [{self.seconds:.2f}s] "
                f"{self.detail}")


def check_representation_antisymmetric(quick: bool):
    """First-return series rebuild of Pi_n vs direct evolution, nu = 1, 2."""
    worst = 0.0
    for walk in (LAZY_1D(), NN_2D()):
        top = 32 if quick and walk.dim == 2 else 64
        for n in range(1, top + 1):
            dev = pi_antisymmetric(walk, n).max_abs_diff(evolve_perturbed(walk, n))
            worst = max(worst, dev)
    return worst, 1e-12, "<=", "lazy 1D and nearest-neighbour 2D, all n <= 64"


def check_prop2_identity(quick: bool):
    """Origin mass of the perturbed walk equals the free one (antisymmetric c)."""
    worst = 0.0
    for walk in (LAZY_1D(), NN_2D()):
        seq = return_sequence(walk, 64, perturbed=True)
        worst = max(worst, float(np.max(np.abs(seq.perturbed - seq.values))))
    return worst, 1e-12, "<=", "nu = 1 and nu = 2, n <= 64"


def check_symmetric_representation(quick: bool):
    """Composition-series rebuild of Pi_n for a symmetric perturbation."""
    walk = SYMMETRIC_1D()
    worst = 0.0
    for n in range(1, 17):
        dev = pi_symmetric(walk, n).max_abs_diff(evolve_perturbed(walk, n))
        worst = max(worst, dev)
    return worst, 1e-12, "<=", "symmetric 1D kernel, n <= 16"


def check_convolution_identity(quick: bool):
    """a * (origin-avoiding field) equals a * (free field)."""
    top = 16 if quick else 32
    worst = max(
        convolution_identity_check(LAZY_1D(), top),
        convolution_identity_check(NN_2D(), top),
    )
    return worst, 1e-12, "<=", f"lazy 1D and nearest-neighbour 2D, k <= {top}"


def check_fourier_inversion(quick: bool):
    """Characteristic-function assembly inverts to the DP field; the free
    symbol has a positive quadratic decay rate."""
    dev = fourier_inversion_check(LAZY_1D(), 32, 128)
    gamma = characteristic_decay_rate(LAZY_1D(), 128)
    slack = max(dev / 1e-10, 1.0 if gamma <= 0.0 else 0.0)
    return slack, 1.0, "<= (normalised)", (
        f"inversion deviation {dev:.3e} (tol 1e-10), fitted gamma {gamma:.4f}"
    )


def check_delta_three_way(quick: bool):
    """Closed form vs quadrature vs exact-p sum for the correction, nu = 1."""
    walk = LAZY_1D()
    n = 200 if quick else 400
    mom = moments(walk)
    returns = return_sequence(walk, n - 2)
    floor = float(n) ** -0.5
    worst_closed = 0.0
    worst_sum = 0.0
    xs = range(1, 11) if quick else range(1, 21)
    for mag in xs:
        for x in (mag, -mag):
            dq = delta_quadrature(mom, n, (x,))
            dc = delta_closed(mom, n, (x,))
            ds = delta_sum(walk, n, (x,), returns, mom)
            worst_closed = max(worst_closed, abs(dc - dq) / max(abs(dq), floor))
            allowance = 0.02 * floor * abs(x) + 1e-10
            worst_sum = max(worst_sum, abs(ds - dq) / allowance)
    slack = max(worst_closed / 1e-6, worst_sum)
    return slack, 1.0, "<= (normalised)", (
        f"closed-vs-quadrature rel {worst_closed:.3e} (tol 1e-6), "
        f"sum-vs-quadrature at {worst_sum:.3f} of its allowance"
    )


def check_theorem_convergence(quick: bool):
    """n^(1/2) |exact - quadrature| decreases along a doubling ladder and
    lands below 10% of the correction itself."""
    walk = LAZY_1D()
    mom = moments(walk)
    ladder = (100, 200, 400, 800, 1600)
    xs = (1, 2, 3, 5)
    e = {x: [] for x in xs}
    ratios = {}
    for n in ladder:
        corr = exact_correction(walk, n)
        for x in xs:
            dq = delta_quadrature(mom, n, (x,))
            err = math.sqrt(n) * abs(corr.value_at((x,)) - dq)
            e[x].append(err)
            if n == ladder[-1]:
                ratios[x] = err / (math.sqrt(n) * abs(dq))
    monotone = all(
        e[x][i + 1] < e[x][i] for x in xs for i in range(len(ladder) - 1)
    )
    worst_ratio = max(ratios.values())
    slack = max(worst_ratio / 0.10, 0.0 if monotone else 2.0)
    decay = {x: [round(v, 5) for v in e[x]] for x in xs}
    return slack, 1.0, "<= (normalised)", (
        f"monotone={monotone}, final residual/correction ratios "
        + ", ".join(f"x={x}: {ratios[x]:.3f}" for x in xs)
        + f"; ladders {decay}"
    )


def _transect_max(mom, n: int, direction, r_lo: int, r_hi: int) -> float:
    scale = float(n) ** (0.5 * mom.dim)
    worst = 0.0
    d = np.asarray(direction, dtype=np.int64)
    for r in range(r_lo, r_hi + 1):
        worst = max(worst, scale * abs(delta_quadrature(mom, n, r * d)))
    return worst


def check_dimensional_locality(quick: bool):
    """In nu = 2, 3 the scaled correction at |x| >= 3 sqrt(n) is below 1%
    of its value next to the perturbation."""
    worst = 0.0
    details = []
    for walk, n in ((LAZY_2D(), 100), (LAZY_3D(), 60)):
        mom = moments(walk)
        nu = walk.dim
        ref = float(n) ** (0.5 * nu) * abs(
            delta_quadrature(mom, n, (1,) + (0,) * (nu - 1))
        )
        inner = math.ceil(3.0 * math.sqrt(n))
        box = n * walk.max_step_radius()
        far = _transect_max(mom, n, (1,) + (0,) * (nu - 1), inner, box)
        diag_lo = math.ceil(inner / math.sqrt(nu))
        far = max(far, _transect_max(mom, n, (1,) * nu, diag_lo, box))
        ratio = far / ref
        details.append(f"nu={nu}: far/near {ratio:.2e}")
        worst = max(worst, ratio)
    return worst, 0.01, "<=", "; ".join(details)


def check_long_range_band(quick: bool):
    """In nu = 1 the scaled correction at x = ceil(sqrt(n)) stays in a
    factor-2 band while n doubles (the long-range regime persists)."""
    walk = LAZY_1D()
    mom = moments(walk)
    vals = []
    for n in (100, 200, 400, 800, 1600):
        x = math.ceil(math.sqrt(n))
        vals.append(math.sqrt(n) * abs(delta_quadrature(mom, n, (x,))))
    spread = max(vals) / min(vals)
    return spread, 2.0, "<=", (
        "sqrt(n)*|correction| at x=ceil(sqrt(n)): "
        + ", ".join(f"{v:.5f}" for v in vals)
    )


def check_psi_tail(quick: bool):
    """Fitted residual-tail constant C_3 stays within a 4x band in n."""
    walk = LAZY_1D()
    cs = [psi_tail_check(walk, n, 3, 5.0) for n in (100, 200, 400, 800)]
    spread = max(cs) / min(cs)
    return spread, 4.0, "<=", (
        "C_3 over n in {100,200,400,800}: " + ", ".join(f"{c:.4f}" for c in cs)
    )


def check_appendix_bound(quick: bool):
    """Scaled slow/fast split sums converge to the stated limits."""
    rep1 = appendix_bound_check(0, 1.0, 1, 2000)
    _, scaled = rep1.at(2000)
    target = math.e / (math.e - 1.0)
    dev1 = abs(scaled / target - 1.0)
    rep2 = appendix_bound_check(2, 1.0, 2, 2000)
    s_n, _ = rep2.at(1000)
    s_2n, _ = rep2.at(2000)
    dev2 = abs((s_2n / s_n) / 0.5 - 1.0)
    slack = max(dev1 / 0.01, dev2 / 0.02)
    return slack, 1.0, "<= (normalised)", (
        f"(l,a,nu)=(0,1,1): n^(1/2)S(n) = {scaled:.6f} vs e/(e-1) = {target:.6f} "
        f"(dev {dev1:.2%}); (2,1,2): S(2n)/S(n) = {s_2n / s_n:.5f} vs 0.5 "
        f"(dev {dev2:.2%})"
    )


def check_monte_carlo(quick: bool):
    """Sampled estimates sit inside 4-sigma known-p intervals, and the
    intervals cover the exact value for >= 99 of 100 seeds."""
    walk = LAZY_1D()
    n = 16
    dp = evolve_perturbed(walk, n)
    main = sample(walk, n, 1_000_000, seed=20260815)
    worst_z = 0.0
    tested = 0
    for site in dp.sites():
        p = dp.value_at(site)
        if p < 1e-4:
            continue
        tested += 1
        se = math.sqrt(p * (1.0 - p) / main.samples)
        worst_z = max(worst_z, abs(main.estimate(site) - p) / se)
    detail = f"{tested} sites with mass >= 1e-4, worst |z| = {worst_z:.2f}"
    if quick:
        return worst_z / 4.0, 1.0, "<= (normalised)", detail + " (coverage skipped)"
    sites = [(0,), (1,), (-1,), (2,), (-2,), (5,), (-5,)]
    hits = coverage_check(walk, n, 200_000, range(100), sites, dp)
    min_cov = int(hits.min())
    slack = max(worst_z / 4.0, 0.0 if min_cov >= 99 else 2.0)
    detail += f"; per-site coverage over 100 seeds: min {min_cov}/100"
    return slack, 1.0, "<= (normalised)", detail


def check_calibration_constant(quick: bool):
    """The frozen global correction constant re-measures from the exact
    evolution (lazy 1D, n = 800, x in {2,3,5}) to within the finite-n
    envelope of its approach to the continuum value."""
    measured = calibrate_delta(LAZY_1D(), n=800, xs=(2, 3, 5))
    dev = abs(measured - DELTA_CALIBRATION)
    return dev, 0.01, "<=", (
        f"measured {measured:.6f} vs frozen {DELTA_CALIBRATION!r}"
    )


#: name -> (function, include_in_quick)
CHECKS = {
    "representation_antisymmetric": (check_representation_antisymmetric, True),
    "prop2_identity": (check_prop2_identity, True),
    "symmetric_representation": (check_symmetric_representation, True),
    "convolution_identity": (check_convolution_identity, True),
    "fourier_inversion": (check_fourier_inversion, True),
    "delta_three_way": (check_delta_three_way, True),
    "theorem_convergence": (check_theorem_convergence, False),
    "dimensional_locality": (check_dimensional_locality, False),
    "long_range_band": (check_long_range_band, False),
    "psi_tail": (check_psi_tail, False),
    "appendix_bound": (check_appendix_bound, True),
    "monte_carlo": (check_monte_carlo, True),
    "calibration_constant": (check_calibration_constant, False),
}


def check_names(quick: bool = False) -> list[str]:
    return [name for name, (_, in_quick) in CHECKS.items()
            if in_quick or not quick]


def run_checks(names=None, quick: bool = False) -> list[CheckResult]:
    selected = names if names is not None else check_names(quick)
    results = []
    for name in selected:
        fn, _ = CHECKS[name]
        start = time.perf_counter()
        measured, bound, comparison, detail = fn(quick)
        seconds = time.perf_counter() - start
        results.append(CheckResult(
            name=name, passed=bool(measured <= bound), measured=float(measured),
            bound=float(bound), comparison=comparison, seconds=seconds,
            detail=detail,
        ))
    return results
