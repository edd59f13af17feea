"""Analytic lower bounds on the coherence sum C^X + C^Z of a qubit.

All bounds are scalar functions of ``c`` (the largest squared overlap
between the two measurement bases) and ``P`` (the purity Tr rho^2), both in
[1/2, 1]. Each returns a :class:`BoundValue` carrying the raw value, which may
be negative (a vacuous bound), and the value clamped at zero. Arrays are
accepted and broadcast.
"""
import enum
from typing import NamedTuple

import numpy as np

from .coherence import MeasureKind
from .errors import DomainError
from .numlin import NUMERIC_TOL, binary_entropy


class BoundKind(enum.Enum):
    MU_RE = "mu_re"
    BERTA_RE = "berta_re"
    SANCHEZ_RE = "sanchez_re"
    KORZEKWA_RE = "korzekwa_re"
    THM2_RE = "thm2_re"
    THM3_CF = "thm3_cf"
    THM4_L1 = "thm4_l1"

    @property
    def measure(self):
        if self is BoundKind.THM3_CF:
            return MeasureKind.FORMATION
        if self is BoundKind.THM4_L1:
            return MeasureKind.L1
        return MeasureKind.RELATIVE_ENTROPY


class BoundValue(NamedTuple):
    raw: float
    clamped: float


def _value(raw):
    # adding 0.0 turns -0.0 into 0.0
    raw = np.asarray(raw, dtype=float) + 0.0
    clamped = np.maximum(raw, 0.0)
    if raw.ndim == 0:
        return BoundValue(float(raw), float(clamped))
    return BoundValue(raw, clamped)


def check_range(name, x):
    x = np.asarray(x, dtype=float)
    if np.any(np.isnan(x)) or np.any((x < 0.5 - NUMERIC_TOL) | (x > 1 + NUMERIC_TOL)):
        raise DomainError(f"{name} must lie in [0.5, 1], got {x}")
    return np.clip(x, 0.5, 1.0)


def purity_to_p(P):
    """Larger eigenvalue p of a qubit with purity P = 2p^2 - 2p + 1."""
    P = check_range("purity", P)
    p = (1 + np.sqrt(2 * P - 1)) / 2
    return p[()] if p.ndim == 0 else p


def state_entropy(P):
    """Von Neumann entropy of any qubit with purity P."""
    return binary_entropy(purity_to_p(P))


def bound_mu_re(c, P):
    c = check_range("c", c)
    return _value(-np.log2(c) - 2 * state_entropy(P))


def bound_berta_re(c, P):
    c = check_range("c", c)
    return _value(-np.log2(c) - state_entropy(P))


def bound_sanchez_re(c, P):
    c = check_range("c", c)
    return _value(binary_entropy((1 + np.sqrt(2 * c - 1)) / 2) - 2 * state_entropy(P))


def bound_korzekwa_re(c, P):
    c = check_range("c", c)
    return _value(-(1 - state_entropy(P)) * np.log2(c))


def bound_thm2_re(c, P):
    """Relative-entropy bound h((sqrt(2P-1)(2 sqrt(c)-1) + 1)/2) - H(rho)."""
    c = check_range("c", c)
    P = check_range("purity", P)
    arg = (np.sqrt(2 * P - 1) * (2 * np.sqrt(c) - 1) + 1) / 2
    return _value(binary_entropy(arg) - state_entropy(P))


def bound_thm3_cf(c, P):
    """Coherence-of-formation bound h((1 + sqrt(1 - 4(2P-1) sqrt(c)(1-sqrt(c))))/2)."""
    c = check_range("c", c)
    P = check_range("purity", P)
    sc = np.sqrt(c)
    inner = np.clip(1 - 4 * (2 * P - 1) * sc * (1 - sc), 0.0, 1.0)
    return _value(binary_entropy((1 + np.sqrt(inner)) / 2))


def bound_thm4_l1(c, P):
    """l1 bound 2 sqrt((2P-1) c (1-c)); attained by some state for every (c, P)."""
    c = check_range("c", c)
    P = check_range("purity", P)
    return _value(2 * np.sqrt(np.clip((2 * P - 1) * c * (1 - c), 0.0, None)))


BOUND_FUNCTIONS = {
    BoundKind.MU_RE: bound_mu_re,
    BoundKind.BERTA_RE: bound_berta_re,
    BoundKind.SANCHEZ_RE: bound_sanchez_re,
    BoundKind.KORZEKWA_RE: bound_korzekwa_re,
    BoundKind.THM2_RE: bound_thm2_re,
    BoundKind.THM3_CF: bound_thm3_cf,
    BoundKind.THM4_L1: bound_thm4_l1,
}


def evaluate(kind, c, P):
    return BOUND_FUNCTIONS[BoundKind(kind)](c, P)


def evaluate_all(c, P):
    """Every bound at (c, P), keyed by BoundKind in declaration order."""
    return {kind: BOUND_FUNCTIONS[kind](c, P) for kind in BoundKind}
