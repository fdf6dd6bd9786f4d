"""Walk descriptions: step kernels, validation, and step moments.

A walk on the integer lattice Z^nu is described by a free step distribution
P (symmetric, finite support, no drift) plus a signed perturbation applied
only when the walker sits at the origin.  The perturbation row is

    c(u) = epsilon * s(u) + a(u)

with s symmetric and a antisymmetric, so the origin row of the transition
matrix is P + c and every other row is P.  ``validate`` is the only gateway:
all engines in this package accept the :class:`Walk` object it returns.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateCovariance,
    DimensionMismatch,
    NotAProbability,
    NotAntisymmetric,
    NotSymmetric,
    Reducible,
)

__all__ = [
    "SignedKernel",
    "WalkSpec",
    "Walk",
    "MomentData",
    "validate",
    "moments",
    "walk_from_json",
    "load_walk",
    "LAZY_1D",
    "NN_2D",
    "LAZY_2D",
    "LAZY_3D",
    "SYMMETRIC_1D",
]

#: tolerance for "sums to one" and symmetry checks
_VALIDATION_TOL = 1e-12

#: box radius, in units of the maximal step radius, used for the
#: reachability (irreducibility) scan
_REACH_FACTOR = 4

#: horizon used to detect the period of the free walk
_PERIOD_HORIZON = 32


LatticeVector = tuple[int, ...]


def _as_vector(u, dim: int | None = None) -> LatticeVector:
    """Coerce ``u`` to a tuple of ints; scalars are 1-d vectors."""
    if isinstance(u, (int, np.integer)):
        vec: LatticeVector = (int(u),)
    else:
        vec = tuple(int(c) for c in u)
    if dim is not None and len(vec) != dim:
        raise DimensionMismatch(f"expected a {dim}-vector, got {vec!r}")
    return vec


@dataclass(frozen=True)
class SignedKernel:
    """Finitely supported real weights on lattice vectors.

    Zero weights are dropped on construction so the support is canonical.
    """

    dim: int
    entries: dict[LatticeVector, float] = field(default_factory=dict)

    @classmethod
    def from_entries(cls, dim: int, entries) -> "SignedKernel":
        clean: dict[LatticeVector, float] = {}
        for u, w in dict(entries).items():
            vec = _as_vector(u, dim)
            w = float(w)
            if w != 0.0:
                clean[vec] = clean.get(vec, 0.0) + w
        return cls(dim, clean)

    @property
    def support(self) -> list[LatticeVector]:
        return sorted(self.entries)

    def weight(self, u) -> float:
        return self.entries.get(_as_vector(u, self.dim), 0.0)

    def total(self) -> float:
        return math.fsum(self.entries.values())

    def max_radius(self) -> int:
        if not self.entries:
            return 0
        return max(max(abs(c) for c in u) for u in self.entries)

    def is_symmetric(self, tol: float = _VALIDATION_TOL) -> bool:
        return all(
            abs(w - self.entries.get(tuple(-c for c in u), 0.0)) <= tol
            for u, w in self.entries.items()
        )

    def is_antisymmetric(self, tol: float = _VALIDATION_TOL) -> bool:
        return all(
            abs(w + self.entries.get(tuple(-c for c in u), 0.0)) <= tol
            for u, w in self.entries.items()
        )

    def __add__(self, other: "SignedKernel") -> "SignedKernel":
        if other.dim != self.dim:
            raise DimensionMismatch("cannot add kernels of different dimension")
        merged = dict(self.entries)
        for u, w in other.entries.items():
            merged[u] = merged.get(u, 0.0) + w
        return SignedKernel.from_entries(self.dim, merged)

    def scaled(self, factor: float) -> "SignedKernel":
        return SignedKernel.from_entries(
            self.dim, {u: factor * w for u, w in self.entries.items()}
        )


@dataclass(frozen=True)
class WalkSpec:
    """Raw, unvalidated description of a perturbed walk.

    ``anti``/``sym`` default to empty kernels (an unperturbed walk).
    """

    free: SignedKernel
    anti: SignedKernel | None = None
    sym: SignedKernel | None = None
    epsilon: float = 0.0

    def __post_init__(self):
        if self.anti is None:
            object.__setattr__(self, "anti",
                               SignedKernel.from_entries(self.free.dim, {}))
        if self.sym is None:
            object.__setattr__(self, "sym",
                               SignedKernel.from_entries(self.free.dim, {}))

    @property
    def dim(self) -> int:
        return self.free.dim


@dataclass(frozen=True)
class Walk:
    """A validated walk.  Produced only by :func:`validate`.

    Attributes
    ----------
    free : SignedKernel
        The free step distribution P.
    origin_row : SignedKernel
        P + epsilon*s + a, i.e. the transition row used at the origin.
    perturbation : SignedKernel
        epsilon*s + a (may be empty).
    aperiodic : bool
        Whether the free walk is aperiodic.  Periodic walks are accepted
        here but refused by the asymptotic evaluators.
    """

    free: SignedKernel
    anti: SignedKernel
    sym: SignedKernel
    epsilon: float
    origin_row: SignedKernel
    perturbation: SignedKernel
    aperiodic: bool

    @property
    def dim(self) -> int:
        return self.free.dim

    @property
    def is_perturbed(self) -> bool:
        return bool(self.perturbation.entries)

    def max_step_radius(self) -> int:
        return max(self.free.max_radius(), self.origin_row.max_radius())

    def content_hash(self) -> str:
        """Stable hash of the walk content, used to tag CSV outputs."""
        blob = json.dumps(
            {
                "dim": self.dim,
                "P": [[list(u), w] for u, w in sorted(self.free.entries.items())],
                "a": [[list(u), w] for u, w in sorted(self.anti.entries.items())],
                "s": [[list(u), w] for u, w in sorted(self.sym.entries.items())],
                "epsilon": self.epsilon,
            },
            separators=(",", ":"),
        )
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _check_free(free: SignedKernel) -> None:
    if not free.entries:
        raise NotAProbability("free kernel is empty")
    neg = [u for u, w in free.entries.items() if w < 0]
    if neg:
        raise NotAProbability(f"free kernel has negative weights at {neg}")
    total = free.total()
    if abs(total - 1.0) > _VALIDATION_TOL:
        raise NotAProbability(f"free kernel sums to {total!r}, not 1")
    if not free.is_symmetric():
        raise NotSymmetric("free kernel must satisfy P(u) = P(-u)")


def _check_perturbation(spec: WalkSpec) -> SignedKernel:
    if spec.anti.dim != spec.dim or spec.sym.dim != spec.dim:
        raise DimensionMismatch("perturbation kernels disagree with free kernel dimension")
    if not spec.anti.is_antisymmetric():
        raise NotAntisymmetric("a must satisfy a(u) = -a(-u)")
    if not spec.sym.is_symmetric():
        raise NotSymmetric("s must satisfy s(u) = s(-u)")
    pert = spec.anti + spec.sym.scaled(spec.epsilon)
    row = spec.free + pert
    neg = [u for u, w in row.entries.items() if w < -_VALIDATION_TOL]
    if neg:
        raise NotAProbability(f"origin row P + c has negative weights at {neg}")
    total = row.total()
    if abs(total - 1.0) > _VALIDATION_TOL:
        raise NotAProbability(f"origin row sums to {total!r}, not 1")
    return pert


def _reachable_points(free: SignedKernel, origin_row: SignedKernel) -> list[LatticeVector]:
    """BFS from the origin over positive-weight steps, inside a small box."""
    dim = free.dim
    radius = _REACH_FACTOR * max(free.max_radius(), origin_row.max_radius(), 1)
    free_steps = [u for u, w in free.entries.items() if w > 0]
    origin_steps = [u for u, w in origin_row.entries.items() if w > 0]
    seen = {(0,) * dim}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        steps = origin_steps if all(c == 0 for c in x) else free_steps
        for u in steps:
            y = tuple(xc + uc for xc, uc in zip(x, u))
            if y in seen or any(abs(c) > radius for c in y):
                continue
            seen.add(y)
            queue.append(y)
    return sorted(seen)


def _free_period(free: SignedKernel) -> int:
    """gcd of return times of the free walk, probed up to a fixed horizon."""
    if free.weight((0,) * free.dim) > 0:
        return 1
    # Small dict-based convolution: supports stay tiny at this horizon.
    current: dict[LatticeVector, float] = {(0,) * free.dim: 1.0}
    g = 0
    for n in range(1, _PERIOD_HORIZON + 1):
        nxt: dict[LatticeVector, float] = {}
        for x, px in current.items():
            for u, w in free.entries.items():
                y = tuple(xc + uc for xc, uc in zip(x, u))
                nxt[y] = nxt.get(y, 0.0) + px * w
        current = nxt
        if current.get((0,) * free.dim, 0.0) > 0:
            g = math.gcd(g, n)
            if g == 1:
                return 1
    return g if g else 0


def validate(spec: WalkSpec) -> Walk:
    """Validate a raw spec and return the package-wide walk object.

    Checks: P is a symmetric probability; a is antisymmetric; s is symmetric;
    the origin row P + epsilon*s + a is a probability; the positive-weight
    steps reach a full-rank sublattice from the origin.  Periodicity of the
    free walk is detected and recorded but is not an error here.
    """
    _check_free(spec.free)
    pert = _check_perturbation(spec)
    origin_row = spec.free + pert
    points = _reachable_points(spec.free, origin_row)
    rank = np.linalg.matrix_rank(np.array(points, dtype=float))
    if rank < spec.dim:
        raise Reducible(
            f"walk reaches a rank-{rank} sublattice of Z^{spec.dim} from the origin"
        )
    return Walk(
        free=spec.free,
        anti=spec.anti,
        sym=spec.sym,
        epsilon=float(spec.epsilon),
        origin_row=origin_row,
        perturbation=pert,
        aperiodic=_free_period(spec.free) == 1,
    )


@dataclass(frozen=True)
class MomentData:
    """Step moments of a validated walk.

    ``covariance`` is B_ij = sum_u u_i u_j P(u) and ``drift`` is
    d = sum_u u a(u), the first moment of the antisymmetric part.
    ``raw_moments`` maps (kernel_name, multi_index) to the raw moment of
    that kernel, for multi-indices up to the requested total order.
    """

    dim: int
    covariance: np.ndarray
    drift: np.ndarray
    raw_moments: dict[tuple[str, LatticeVector], float]

    @cached_property
    def det_covariance(self) -> float:
        return float(np.linalg.det(self.covariance))

    @cached_property
    def covariance_inverse(self) -> np.ndarray:
        return np.linalg.inv(self.covariance)


def _raw_moment(kernel: SignedKernel, alpha: LatticeVector) -> float:
    acc = 0.0
    for u, w in kernel.entries.items():
        term = w
        for c, a in zip(u, alpha):
            term *= c**a
        acc += term
    return acc


def moments(walk: Walk, order: int = 3) -> MomentData:
    """Covariance of P, drift of a, and raw moments up to ``order``."""
    dim = walk.dim
    cov = np.zeros((dim, dim))
    for u, w in walk.free.entries.items():
        cov += w * np.outer(u, u)
    eigvals = np.linalg.eigvalsh(cov)
    if eigvals.min() <= 0:
        raise DegenerateCovariance(
            f"step covariance has non-positive eigenvalue {eigvals.min():.3e}"
        )
    drift = np.zeros(dim)
    for u, w in walk.anti.entries.items():
        drift += w * np.array(u, dtype=float)

    raw: dict[tuple[str, LatticeVector], float] = {}
    kernels = {"P": walk.free, "c": walk.perturbation}
    for name, kern in kernels.items():
        for total in range(order + 1):
            for alpha in itertools.product(range(total + 1), repeat=dim):
                if sum(alpha) == total:
                    raw[(name, alpha)] = _raw_moment(kern, alpha)
    return MomentData(dim=dim, covariance=cov, drift=drift, raw_moments=raw)


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------


def _kernel_from_list(dim: int, rows, what: str) -> SignedKernel:
    entries = {}
    for row in rows:
        if not isinstance(row, dict) or "u" not in row or "w" not in row:
            raise NotAProbability(f"{what}: each entry needs fields 'u' and 'w'")
        u = row["u"]
        if isinstance(u, (int, float)):
            u = [u]
        if len(u) != dim or any(int(c) != c for c in u):
            raise DimensionMismatch(f"{what}: step {u!r} is not an integer {dim}-vector")
        vec = tuple(int(c) for c in u)
        entries[vec] = entries.get(vec, 0.0) + float(row["w"])
    return SignedKernel.from_entries(dim, entries)


def walk_from_json(obj: dict) -> Walk:
    """Build and validate a walk from its JSON object form.

    Expected shape::

        {"dim": 1,
         "P": [{"u": [0], "w": 0.5}, {"u": [1], "w": 0.25}, {"u": [-1], "w": 0.25}],
         "a": [{"u": [1], "w": 0.1}, {"u": [-1], "w": -0.1}],
         "s": [],
         "epsilon": 0.0}

    ``a``, ``s`` and ``epsilon`` may be omitted.
    """
    if "dim" not in obj or "P" not in obj:
        raise DimensionMismatch("kernel JSON needs at least 'dim' and 'P'")
    dim = int(obj["dim"])
    if dim < 1:
        raise DimensionMismatch(f"dim must be >= 1, got {dim}")
    spec = WalkSpec(
        free=_kernel_from_list(dim, obj["P"], "P"),
        anti=_kernel_from_list(dim, obj.get("a", []), "a"),
        sym=_kernel_from_list(dim, obj.get("s", []), "s"),
        epsilon=float(obj.get("epsilon", 0.0)),
    )
    return validate(spec)


def load_walk(path) -> Walk:
    """Load and validate a walk from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        return walk_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# Stock walks used throughout the tests and docs
# ---------------------------------------------------------------------------


def _stock(dim, free, anti=(), sym=(), epsilon=0.0) -> Walk:
    return validate(
        WalkSpec(
            free=SignedKernel.from_entries(dim, dict(free)),
            anti=SignedKernel.from_entries(dim, dict(anti)),
            sym=SignedKernel.from_entries(dim, dict(sym)),
            epsilon=epsilon,
        )
    )


def LAZY_1D(bias: float = 0.1) -> Walk:
    """Lazy 1-d walk, P(0)=1/2, P(+-1)=1/4, with a(+-1) = +-bias."""
    return _stock(
        1,
        {(0,): 0.5, (1,): 0.25, (-1,): 0.25},
        anti={(1,): bias, (-1,): -bias},
    )


def NN_2D(bias: float = 0.05) -> Walk:
    """Plain 2-d nearest-neighbour walk with a(+-e1) = +-bias (periodic)."""
    return _stock(
        2,
        {(1, 0): 0.25, (-1, 0): 0.25, (0, 1): 0.25, (0, -1): 0.25},
        anti={(1, 0): bias, (-1, 0): -bias},
    )


def LAZY_2D(bias: float = 0.05) -> Walk:
    """Lazy 2-d walk (aperiodic), holding probability 1/2."""
    return _stock(
        2,
        {(0, 0): 0.5, (1, 0): 0.125, (-1, 0): 0.125, (0, 1): 0.125, (0, -1): 0.125},
        anti={(1, 0): bias, (-1, 0): -bias},
    )


def LAZY_3D(bias: float = 0.05) -> Walk:
    """Lazy 3-d walk (aperiodic), holding probability 1/4."""
    free = {(0, 0, 0): 0.25}
    for axis in range(3):
        for sign in (1, -1):
            u = [0, 0, 0]
            u[axis] = sign
            free[tuple(u)] = 0.125
    return _stock(3, free, anti={(1, 0, 0): bias, (-1, 0, 0): -bias})


def SYMMETRIC_1D(epsilon: float = 1.0) -> Walk:
    """Lazy 1-d walk with a symmetric perturbation: origin row 1/8, 3/4, 1/8."""
    return _stock(
        1,
        {(0,): 0.5, (1,): 0.25, (-1,): 0.25},
        sym={(0,): 0.25, (1,): -0.125, (-1,): -0.125},
        epsilon=epsilon,
    )
