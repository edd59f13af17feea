import numpy as np
import pytest

from conftest import random_density, random_unitary
from oracles import h2
from qucoh import coherence as coh
from qucoh import numlin
from qucoh.coherence import MeasureKind
from qucoh.errors import DomainError, InvalidInputError, UnsupportedDimensionError

SQ = 1 / np.sqrt(2)
Z = np.eye(2, dtype=complex)
X = np.array([[SQ, SQ], [SQ, -SQ]], dtype=complex)
PLUS = np.full((2, 2), 0.5, dtype=complex)
MEASURES = list(MeasureKind)


def qubit_measure(kind, rho, basis):
    return coh.coherence(kind, rho, basis)


def test_measure_parse():
    assert MeasureKind.parse("RE") is MeasureKind.RELATIVE_ENTROPY
    assert MeasureKind.parse("cf") is MeasureKind.FORMATION
    with pytest.raises(DomainError):
        MeasureKind.parse("l2")


# --- dephasing --------------------------------------------------------------

def test_dephase_examples():
    diag = np.diag([0.3, 0.7]).astype(complex)
    np.testing.assert_allclose(coh.dephase(diag, Z), diag, atol=1e-15)
    np.testing.assert_allclose(coh.dephase(PLUS, Z), np.eye(2) / 2, atol=1e-15)
    rho = numlin.state_from_bloch([0.5, 0, 0.5])
    np.testing.assert_allclose(coh.dephase(rho, Z), numlin.state_from_bloch([0, 0, 0.5]),
                               atol=1e-15)


def test_dephase_properties_against_projector_sum(rng):
    for d in (2, 3, 4):
        U = random_unitary(rng, d)
        rho = random_density(rng, d)
        out = coh.dephase(rho, U)
        # independent route: explicit sum of projectors
        expected = sum(np.real(U[:, i].conj() @ rho @ U[:, i])
                       * np.outer(U[:, i], U[:, i].conj()) for i in range(d))
        np.testing.assert_allclose(out, expected, atol=1e-13)
        assert abs(np.trace(out) - 1) < 1e-13
        np.testing.assert_allclose(coh.dephase(out, U), out, atol=1e-13)
        in_basis = U.conj().T @ out @ U
        assert np.max(np.abs(in_basis - np.diag(np.diag(in_basis)))) < 1e-13


def test_dimension_mismatch():
    with pytest.raises(InvalidInputError):
        coh.coherence_l1(np.eye(3) / 3, Z)


# --- closed-form examples ----------------------------------------------------

@pytest.mark.parametrize("kind", MEASURES)
def test_incoherent_and_plus_state(kind):
    assert qubit_measure(kind, np.diag([0.2, 0.8]), Z) == 0.0
    assert abs(qubit_measure(kind, PLUS, Z) - 1.0) < 1e-12


def test_relative_entropy_mixed_example():
    rho = numlin.state_from_bloch([0.5, 0, 0])
    expected = float(h2(0.5) - h2(0.75))  # 0.188721875541
    assert abs(coh.coherence_relative_entropy(rho, Z) - expected) < 1e-12


def test_l1_mixed_example():
    rho = numlin.state_from_bloch([0.5, 0, 0])
    assert abs(coh.coherence_l1(rho, Z) - 0.5) < 1e-14
    # matches sqrt(2P - 1) sin(alpha) with P = 0.625 and alpha = pi / 2
    assert abs(coh.coherence_l1(rho, Z) - np.sqrt(2 * 0.625 - 1)) < 1e-14


def test_formation_example():
    rho = numlin.state_from_bloch([0.5, 0, 0])
    expected = float(h2((1 + np.sqrt(0.75)) / 2))  # 0.354578902665
    assert abs(coh.coherence_formation_qubit(rho, Z) - expected) < 1e-12


def test_formation_requires_qubit():
    with pytest.raises(UnsupportedDimensionError):
        coh.coherence_formation_qubit(np.eye(3) / 3, np.eye(3))


def test_qubit_l1_equals_twice_cross_term(rng):
    rho = random_density(rng, 2, 1000)
    B = np.stack([random_unitary(rng, 2) for _ in range(1000)])
    cross = np.abs(np.einsum("ni,nij,nj->n", B[:, :, 0].conj(), rho, B[:, :, 1]))
    np.testing.assert_allclose(coh.coherence_l1(rho, B), 2 * cross, atol=1e-13)


def test_formation_equals_relative_entropy_for_pure(rng):
    for _ in range(500):
        psi = random_unitary(rng, 2)[:, 0]
        rho = np.outer(psi, psi.conj())
        B = random_unitary(rng, 2)
        assert abs(coh.coherence_formation_qubit(rho, B)
                   - coh.coherence_relative_entropy(rho, B)) < 1e-9


# --- properties ---------------------------------------------------------------

@pytest.mark.parametrize("kind", MEASURES)
def test_nonnegative_and_faithful(rng, kind):
    rho = random_density(rng, 2, 2000)
    B = np.stack([random_unitary(rng, 2) for _ in range(2000)])
    values = coh.coherence(kind, rho, B)
    incoherent = np.max(np.abs(coh.dephase(rho, B) - rho), axis=(-2, -1)) < 1e-9
    assert np.all(values >= 0)
    assert np.all(values[~incoherent] > 1e-9)
    # dephased states have zero coherence
    assert np.all(coh.coherence(kind, coh.dephase(rho, B), B) < 1e-9)


def test_relative_entropy_higher_dimensions(rng):
    for d in (3, 4, 6):
        rho = random_density(rng, d, 200)
        U = random_unitary(rng, d)
        v = coh.coherence_relative_entropy(rho, U)
        assert np.all(v >= 0) and np.all(v <= np.log2(d) + 1e-12)
        assert np.all(coh.coherence_relative_entropy(coh.dephase(rho, U), U) < 1e-9)


def test_formation_increasing_in_l1(rng):
    rho = random_density(rng, 2, 10_000)
    l1 = coh.coherence_l1(rho, Z)
    cf = coh.coherence_formation_qubit(rho, Z)
    order = np.argsort(l1)
    l1, cf = l1[order], cf[order]
    distinct = np.diff(l1) > 1e-12
    assert np.all(np.diff(cf)[distinct] > 0)


@pytest.mark.parametrize("kind", MEASURES)
def test_convexity(rng, kind):
    n = 10_000
    a, b = random_density(rng, 2, n), random_density(rng, 2, n)
    t = rng.uniform(size=n)
    B = random_unitary(rng, 2)
    mixed = t[:, None, None] * a + (1 - t[:, None, None]) * b
    lhs = coh.coherence(kind, mixed, B)
    rhs = t * coh.coherence(kind, a, B) + (1 - t) * coh.coherence(kind, b, B)
    assert np.all(lhs <= rhs + 1e-9)


@pytest.mark.parametrize("kind", MEASURES)
def test_unitary_covariance(rng, kind):
    for _ in range(300):
        rho, B, U = random_density(rng, 2), random_unitary(rng, 2), random_unitary(rng, 2)
        moved = U @ rho @ U.conj().T
        assert abs(coh.coherence(kind, moved, U @ B) - coh.coherence(kind, rho, B)) < 1e-10


# --- decomposition oracle -------------------------------------------------------

def test_oracle_pure_state_is_exact(rng):
    psi = random_unitary(rng, 2)[:, 0]
    rho = np.outer(psi, psi.conj())
    B = random_unitary(rng, 2)
    value = coh.cf_oracle(rho, B, ensembles=3, trials=200)
    assert abs(value - coh.coherence_relative_entropy(rho, B)) < 1e-9


def test_oracle_maximally_mixed_goes_to_zero(rng):
    B = random_unitary(rng, 2)
    assert coh.cf_oracle(np.eye(2) / 2, B, ensembles=2, trials=4000) < 1e-4


def test_oracle_converges_to_closed_form(rng):
    rho = random_density(rng, 2)
    B = random_unitary(rng, 2)
    closed = coh.coherence_formation_qubit(rho, B)
    value = coh.cf_oracle(rho, B, ensembles=3, trials=100_000)
    assert closed - 1e-6 <= value <= closed + 1e-4


def test_oracle_validation_and_determinism(rng):
    rho = random_density(rng, 2)
    with pytest.raises(DomainError):
        coh.cf_oracle(rho, Z, ensembles=5)
    with pytest.raises(UnsupportedDimensionError):
        coh.cf_oracle(np.eye(3) / 3, np.eye(3))
    assert coh.cf_oracle(rho, Z, trials=500, seed=3) == coh.cf_oracle(rho, Z, trials=500, seed=3)
