"""Coherence measures of a state with respect to a measurement basis.

The basis is a ``(d, d)`` matrix whose columns are the basis vectors; the
same stacking rules as in :mod:`qucoh.numlin` apply.
"""
import enum

import numpy as np
from scipy.stats import unitary_group

from . import numlin
from .errors import DomainError, InvalidInputError, UnsupportedDimensionError


class MeasureKind(enum.Enum):
    RELATIVE_ENTROPY = "re"
    FORMATION = "cf"
    L1 = "l1"

    @classmethod
    def parse(cls, name):
        aliases = {"re": cls.RELATIVE_ENTROPY, "relative_entropy": cls.RELATIVE_ENTROPY,
                   "cf": cls.FORMATION, "formation": cls.FORMATION, "l1": cls.L1}
        try:
            return aliases[name.strip().lower()]
        except KeyError:
            raise DomainError(f"unknown measure {name!r}; expected one of re, cf, l1") from None


def _prepare(rho, basis, check):
    if check:
        rho = numlin.validate_density_matrix(rho)
        basis = numlin.validate_basis(basis)
    else:
        rho = np.asarray(rho, dtype=complex)
        basis = np.asarray(basis, dtype=complex)
    if rho.shape[-1] != basis.shape[-1]:
        raise InvalidInputError(
            f"state dimension {rho.shape[-1]} does not match basis dimension {basis.shape[-1]}",
            "shape")
    return rho, basis


def _clamp(value):
    # anything below the entropy resolution is rounding noise
    value = np.where(value < numlin.NUMERIC_TOL, 0.0, value) + 0.0
    return value[()] if value.ndim == 0 else value


def matrix_in_basis(rho, basis):
    """Entries <b_i|rho|b_j>."""
    return numlin.dagger(basis) @ rho @ basis


def outcome_probabilities(rho, basis, check=True):
    rho, basis = _prepare(rho, basis, check)
    return np.real(np.diagonal(matrix_in_basis(rho, basis), axis1=-2, axis2=-1))


def dephase(rho, basis, check=True):
    """Remove the off-diagonal part of ``rho`` in ``basis``."""
    probs = outcome_probabilities(rho, basis, check)
    basis = np.asarray(basis, dtype=complex)
    return (basis * probs[..., None, :]) @ numlin.dagger(basis)


def coherence_relative_entropy(rho, basis, check=True):
    """H(dephased rho) - H(rho), in bits."""
    rho, basis = _prepare(rho, basis, check)
    probs = np.real(np.diagonal(matrix_in_basis(rho, basis), axis1=-2, axis2=-1))
    return _clamp(numlin.shannon_entropy(probs) - numlin.von_neumann_entropy(rho))


def coherence_l1(rho, basis, check=True):
    """Sum of the moduli of the off-diagonal entries of ``rho`` in ``basis``."""
    rho, basis = _prepare(rho, basis, check)
    m = np.abs(matrix_in_basis(rho, basis))
    off = m.sum(axis=(-2, -1)) - np.trace(m, axis1=-2, axis2=-1)
    return _clamp(off)


def formation_from_l1(l1):
    """Qubit coherence of formation as a function of the l1 coherence."""
    l1 = np.clip(np.asarray(l1, dtype=float), 0.0, 1.0)
    return numlin.binary_entropy((1 + np.sqrt(1 - l1 ** 2)) / 2)


def coherence_formation_qubit(rho, basis, check=True):
    """Coherence of formation of a qubit, h((1 + sqrt(1 - C_l1^2)) / 2)."""
    rho, basis = _prepare(rho, basis, check)
    if rho.shape[-1] != 2:
        raise UnsupportedDimensionError(
            f"coherence of formation is only implemented for qubits (d={rho.shape[-1]})")
    return _clamp(np.asarray(formation_from_l1(coherence_l1(rho, basis, check=False))))


def coherence(kind, rho, basis, check=True):
    kind = MeasureKind(kind) if not isinstance(kind, MeasureKind) else kind
    if kind is MeasureKind.RELATIVE_ENTROPY:
        return coherence_relative_entropy(rho, basis, check)
    if kind is MeasureKind.L1:
        return coherence_l1(rho, basis, check)
    return coherence_formation_qubit(rho, basis, check)


def _ensemble_value(iso, sqrt_lam, eigvecs, basis0):
    """Average pure-state coherence of the ensembles generated by isometries.

    ``iso`` has shape (n, K, 2); row e gives the unnormalized member
    sum_i iso[e, i] sqrt(lam_i) |v_i>.
    """
    members = np.einsum("nki,ji->nkj", iso * sqrt_lam, eigvecs)
    weights = np.sum(np.abs(members) ** 2, axis=-1)
    amp0 = np.abs(members @ np.conj(basis0)) ** 2
    safe = np.where(weights > 0, weights, 1.0)
    p0 = np.clip(amp0 / safe, 0.0, 1.0)
    return np.sum(weights * numlin.binary_entropy(p0), axis=-1)


def _near_identity(rng, k, n, eps):
    a = rng.normal(size=(n, k, k)) + 1j * rng.normal(size=(n, k, k))
    h = 0.5 * eps * (a + numlin.dagger(a))
    eye = np.eye(k)
    # Cayley transform keeps the perturbation exactly unitary
    return np.linalg.solve(eye - 0.5j * h, np.broadcast_to(eye + 0.5j * h, h.shape))


def cf_oracle(rho, basis, ensembles=3, trials=10_000, seed=0):
    """Upper estimate of the qubit coherence of formation by sampling decompositions.

    Every K-member pure-state decomposition of ``rho`` comes from a K x 2
    isometry applied to its spectral decomposition. Half of ``trials`` are
    Haar-random isometries; the other half are random local perturbations
    around the best one found so far, with a shrinking step. The returned
    value is an achievable ensemble average, so it never undercuts the true
    convex roof. Deterministic for fixed ``seed`` and ``trials``.
    """
    if ensembles not in (2, 3, 4):
        raise DomainError(f"ensembles must be 2, 3 or 4, got {ensembles}")
    if trials < 2:
        raise DomainError("trials must be at least 2")
    rho, basis = _prepare(rho, basis, check=True)
    if rho.shape != (2, 2):
        raise UnsupportedDimensionError("cf_oracle is only defined for a single qubit")
    lam, vecs = numlin.hermitian_eigen(rho)
    sqrt_lam = np.sqrt(np.clip(lam, 0.0, None))
    basis0 = basis[:, 0]
    rng = np.random.Generator(np.random.Philox(seed))

    n_global = trials // 2
    unitaries = unitary_group.rvs(ensembles, size=n_global, random_state=rng)
    unitaries = unitaries.reshape(n_global, ensembles, ensembles)
    values = _ensemble_value(unitaries[:, :, :2], sqrt_lam, vecs, basis0)
    i = int(np.argmin(values))
    best, best_value = unitaries[i], values[i]

    remaining, eps, batch = trials - n_global, 0.5, 100
    while remaining > 0:
        m = min(batch, remaining)
        remaining -= m
        candidates = _near_identity(rng, ensembles, m, eps) @ best
        values = _ensemble_value(candidates[:, :, :2], sqrt_lam, vecs, basis0)
        i = int(np.argmin(values))
        if values[i] < best_value:
            best, best_value = candidates[i], values[i]
        else:
            eps *= 0.6
    return float(best_value)
