"""Tight lower bounds on the qubit coherence sum for fixed (c, P).

With a = |<x|r>|^2 and b = |<z|r>|^2 (r the dominant eigenvector of rho), the
coherence sum is f(a) + f(b) for a per-measure function f. In Bloch-sphere
angles a = (cos alpha + 1)/2, b = (cos beta + 1)/2 and the bases sit at
angle gamma = arccos(2c - 1). The minimum lies on the edge alpha + beta =
gamma, which leaves a one-variable search over alpha in [gamma/2, gamma].
:func:`tight_bound_2d_crosscheck` brute-forces the whole feasible
(alpha, beta) region to confirm that reduction.
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .bounds import check_range, purity_to_p
from .coherence import MeasureKind
from .errors import DomainError
from .numlin import NUMERIC_TOL, binary_entropy


@dataclass(frozen=True)
class Objective:
    """Per-measure single-overlap cost f(x) for a qubit with eigenvalue p."""

    measure: MeasureKind
    p: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any((x < -NUMERIC_TOL) | (x > 1 + NUMERIC_TOL)):
            raise DomainError(f"objective argument outside [0, 1]: {x}")
        x = np.clip(x, 0.0, 1.0)
        p = self.p
        s = abs(2 * p - 1)
        if self.measure is MeasureKind.RELATIVE_ENTROPY:
            out = binary_entropy(np.clip(x * p + (1 - x) * (1 - p), 0.0, 1.0)) - binary_entropy(p)
        elif self.measure is MeasureKind.L1:
            out = 2 * s * np.sqrt(x * (1 - x))
        else:
            inner = np.clip(1 - 4 * s * s * x * (1 - x), 0.0, 1.0)
            out = binary_entropy((1 + np.sqrt(inner)) / 2)
        return out

    def of_angle(self, alpha):
        """f evaluated at the overlap of two Bloch directions ``alpha`` apart."""
        return self((np.cos(alpha) + 1) / 2)


@dataclass(frozen=True)
class SolverOptions:
    grid_points: int = 2048
    refine_tolerance: float = 1e-10
    max_refine_iterations: int = 200

    def __post_init__(self):
        if self.grid_points < 16:
            raise DomainError("grid_points must be at least 16")
        if not self.refine_tolerance > 0:
            raise DomainError("refine_tolerance must be positive")
        if self.max_refine_iterations < 1:
            raise DomainError("max_refine_iterations must be positive")


@dataclass(frozen=True)
class TightBound:
    value: float
    argmin_alpha: float
    method: str = "boundary_1d"


def objective_f(objective, x):
    """Evaluate ``objective`` (an :class:`Objective`) at overlap ``x``."""
    out = objective(x)
    return out[()] if np.ndim(out) == 0 else out


def make_objective(measure, P):
    measure = measure if isinstance(measure, MeasureKind) else MeasureKind.parse(measure)
    return Objective(measure, float(purity_to_p(P)))


def bases_angle(c):
    """Bloch angle gamma in [0, pi/2] between basis vectors with overlap c."""
    c = float(check_range("c", c))
    return float(np.arccos(np.clip(2 * c - 1, -1.0, 1.0)))


def tight_bound_1d(measure, c, P, opts=None):
    """Minimum of f(a) + f(b) over all qubit states with purity P for bases with c_max = c.

    Dense grid over alpha in [gamma/2, gamma], then golden-section refinement
    inside the cell around the best grid point. Ties go to the smallest alpha.
    """
    opts = opts or SolverOptions()
    obj = make_objective(measure, P)
    gamma = bases_angle(c)

    def g(alpha):
        return obj.of_angle(alpha) + obj.of_angle(gamma - alpha)

    alphas = np.linspace(gamma / 2, gamma, opts.grid_points)
    values = g(alphas)
    i = int(np.argmin(values))
    best_alpha, best_value = float(alphas[i]), float(values[i])

    if 0 < i < len(alphas) - 1 and values[i] < values[i - 1] and values[i] < values[i + 1]:
        res = minimize_scalar(
            lambda a: float(g(a)),
            bracket=(alphas[i - 1], alphas[i], alphas[i + 1]),
            method="golden",
            options={"xtol": opts.refine_tolerance, "maxiter": opts.max_refine_iterations},
        )
        if res.fun < best_value and alphas[i - 1] <= res.x <= alphas[i + 1]:
            best_alpha, best_value = float(res.x), float(res.fun)
    return TightBound(best_value, best_alpha, "boundary_1d")


def tight_bound_2d_crosscheck(measure, c, P, grid=2048):
    """Brute-force minimum of f(a) + f(b) over the full (alpha, beta) feasible region.

    The region is gamma <= alpha + beta <= 2 pi - gamma, 0 <= alpha - beta <= gamma.
    It is sampled on a grid in A = alpha + beta, B = alpha - beta that
    contains every edge of the region.
    """
    if not 2 <= grid <= 4096:
        raise DomainError("grid must lie in [2, 4096]")
    obj = make_objective(measure, P)
    gamma = bases_angle(c)
    n = grid

    if gamma < 1e-12:
        alpha = np.linspace(0.0, np.pi, n)
        return float(np.min(2 * obj.of_angle(alpha)))

    # B on n points with step delta; A on a multiple k of that step, so every
    # alpha and beta lands on one 1D lattice gamma/2 + l*delta/2.
    delta = gamma / (n - 1)
    span = 2 * np.pi - 2 * gamma
    k = max(1, int(round(span / ((n - 1) * delta))))
    m = int(np.floor(span / (k * delta) + 1e-9))
    lattice_size = m * k + 2 * n
    j = np.arange(n)

    if lattice_size <= n * n:
        l_idx = np.arange(-(n - 1), m * k + n)
        lattice = obj.of_angle(np.clip(gamma / 2 + l_idx * delta / 2, 0.0, np.pi))
        ik = (np.arange(m + 1) * k)[:, None]
        offset = n - 1
        total = lattice[ik + j + offset] + lattice[ik - j + offset]
        best = float(total.min())
    else:
        A = (gamma + np.arange(m + 1) * k * delta)[:, None]
        B = (j * delta)[None, :]
        best = float(np.min(obj.of_angle((A + B) / 2) + obj.of_angle((A - B) / 2)))

    # closing edge A = 2 pi - gamma, generally off the lattice
    A_end = 2 * np.pi - gamma
    B = j * delta
    edge = obj.of_angle(np.clip((A_end + B) / 2, 0.0, np.pi)) + obj.of_angle((A_end - B) / 2)
    return min(best, float(edge.min()))


def feasible_region_vertices(c):
    """Candidate minimizers (a, b) = (0, sqrt(c)) and (0, sqrt(1 - c)).

    For a concave f symmetric about 1/2 the analytic minimum of f(a) + f(b)
    is f(0) + f(sqrt(c)).
    """
    c = float(check_range("c", c))
    return [(0.0, float(np.sqrt(c))), (0.0, float(np.sqrt(1 - c)))]
