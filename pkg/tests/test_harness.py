import numpy as np
import pytest

from qucoh import bounds, coherence as coh, harness as hz, numlin
from qucoh.bounds import BoundKind
from qucoh.coherence import MeasureKind
from qucoh.errors import DomainError

SQ = 1 / np.sqrt(2)


def cfg(samples=5000, seed=11, dim=2):
    return hz.SampleConfig(seed=seed, samples=samples, dim=dim)


def test_sample_config_validation():
    with pytest.raises(DomainError):
        hz.SampleConfig(seed=-1)
    with pytest.raises(DomainError):
        hz.SampleConfig(samples=0)
    with pytest.raises(DomainError):
        hz.SampleConfig(dim=9)


def test_streams_are_distinct_and_reproducible():
    c = cfg()
    a = c.rng("lemma1").uniform(size=4)
    assert np.array_equal(a, c.rng("lemma1").uniform(size=4))
    assert not np.array_equal(a, c.rng("lemma2").uniform(size=4))
    assert not np.array_equal(a, c.rng("lemma1", dim_salt=3).uniform(size=4))


# --- samplers ------------------------------------------------------------------

def test_random_pure_state_reproducible_and_normalized():
    a = hz.random_pure_state(3, hz.make_rng(5))
    assert np.array_equal(a, hz.random_pure_state(3, hz.make_rng(5)))
    assert abs(np.linalg.norm(a) - 1) < 1e-14


def test_haar_statistics():
    rng = hz.make_rng(99)
    psi = hz.random_pure_states(2, 10_000, rng)
    rho = psi[:, :, None] * psi.conj()[:, None, :]
    assert np.linalg.norm(numlin.bloch_from_state(rho).mean(axis=0)) < 0.05
    other = hz.random_pure_states(2, 10_000, rng)
    assert abs(numlin.overlap(psi, other).mean() - 0.5) < 0.02


def test_random_unitaries_are_unitary():
    U = hz.random_unitaries(4, 50, hz.make_rng(1))
    np.testing.assert_allclose(U @ numlin.dagger(U), np.broadcast_to(np.eye(4), U.shape),
                               atol=1e-12)


def test_random_density_matrices_valid():
    rho = hz.random_density_matrices(3, 200, hz.make_rng(2))
    for r in rho:
        numlin.validate_density_matrix(r)


def test_random_qubit_with_purity():
    rng = hz.make_rng(3)
    for P in (0.5, 0.62, 0.9, 1.0):
        rho = hz.random_qubit_with(P, rng)
        assert abs(numlin.purity(rho) - P) < 1e-10
    pure = hz.random_qubit_with(1.0, rng)
    assert abs(numlin.hermitian_eigen(pure)[0][0] - 1) < 1e-12


def test_random_basis_pair_with_overlap():
    rng = hz.make_rng(4)
    X, Z = hz.random_basis_pair_with(0.75, rng)
    np.testing.assert_allclose(numlin.basis_pair_geometry(X, Z), (0.75, 0.25), atol=1e-10)
    X, Z = hz.random_basis_pair_with(0.5, rng)
    assert np.allclose(np.abs(numlin.dagger(X) @ Z) ** 2, 0.5, atol=1e-10)
    for c in np.linspace(0.5, 1, 9):
        X, Z = hz.random_basis_pair_with(c, rng)
        assert abs(numlin.basis_pair_geometry(X, Z)[0] - c) < 1e-10


# --- report format -----------------------------------------------------------------

def test_report_text_format():
    report = hz.ViolationReport("demo", 10, 0, 0.25, {"b": 1, "a": [0.5]})
    assert report.to_text() == 'demo\t10\t0\t0.25\n\t{"a": [0.5], "b": 1}'
    assert report.passed
    assert hz.ViolationReport("x", 3, 0, 0.0).to_text() == "x\t3\t0\t0.0"
    assert not hz.ViolationReport("p", 3, 0, 0.0, expect_violations=True).passed


def test_reports_deterministic():
    a = hz.check_lemma1(3, cfg(dim=3))
    b = hz.check_lemma1(3, cfg(dim=3))
    assert a.to_text() == b.to_text()
    assert a.to_text() != hz.check_lemma1(3, cfg(dim=3, seed=12)).to_text()


# --- individual checks ----------------------------------------------------------

@pytest.mark.parametrize("dim", range(2, 7))
def test_lemma1(dim):
    report = hz.check_lemma1(dim, cfg(20_000, dim=dim))
    assert report.total > 0 and report.violations == 0


def test_lemma1_equality_case():
    v = np.array([1.0, 0.0])
    a = b = c = numlin.overlap(v, v)
    assert abs((1 + np.sqrt(c)) - (np.sqrt(a) + np.sqrt(b))) < 1e-15


def test_lemma1_probe_finds_counterexample():
    report = hz.probe_lemma1_lower(3, cfg(500, dim=3))
    assert report.violations >= 1 and report.passed
    # r orthogonal to both x and z in d = 3: a = b = 0 < 1 - sqrt(c)
    x, z, r = np.eye(3)
    assert numlin.overlap(x, r) + numlin.overlap(z, r) < 1 - np.sqrt(numlin.overlap(x, z))


def test_lemma2_and_lemma3():
    assert hz.check_lemma2(cfg(20_000)).violations == 0
    assert hz.check_lemma3(cfg(20_000)).violations == 0


def test_lemma2_examples():
    # collinear: alpha = 0 so sin(beta) = sin(gamma); orthonormal triple: 1 + 1 >= 1
    a, c = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
    assert abs(np.sin(numlin.angle_between(a, c)) - 1) < 1e-15
    assert np.sin(np.pi / 2) * 2 >= np.sin(np.pi / 2)


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_theorem1(dim):
    report = hz.check_theorem1(dim, cfg(5000, dim=dim))
    assert report.total == 5000 and report.violations == 0


def test_theorem1_examples():
    mixed = np.eye(2) / 2
    X = np.array([[SQ, SQ], [SQ, -SQ]])
    total = coh.coherence_relative_entropy(mixed, np.eye(2)) + coh.coherence_relative_entropy(mixed, X)
    assert total == 0.0
    rho = hz.random_qubit_with(1.0, hz.make_rng(8))
    s = coh.coherence_relative_entropy(rho, np.eye(2)) + coh.coherence_relative_entropy(rho, X)
    assert s >= 1 - 1e-9


def test_conditional_entropy_examples():
    Z = np.eye(2)
    assert abs(hz.conditional_entropy_after_measurement(np.eye(2) / 2, Z)) < 1e-12
    rho = hz.random_qubit_with(1.0, hz.make_rng(6))
    probs = coh.outcome_probabilities(rho, Z)
    assert abs(hz.conditional_entropy_after_measurement(rho, Z)
               - numlin.shannon_entropy(probs)) < 1e-10


@pytest.mark.parametrize("dim", [2, 3])
def test_purification_identity(dim):
    assert hz.check_purification_identity(dim, cfg(500, dim=dim)).violations == 0


def test_entropy_sum():
    assert hz.check_entropy_sum(cfg(10_000)).violations == 0
    assert hz.check_entropy_sum(cfg(2000, dim=3)).violations == 0


def test_bounds_validity_all_kinds():
    reports = hz.check_bounds_validity(cfg(20_000))
    assert [r.check_name for r in reports] == [f"bound_{k.value}" for k in BoundKind]
    assert all(r.violations == 0 and r.total == 20_000 for r in reports)


def test_single_bound_validity():
    report = hz.check_bound_validity(MeasureKind.FORMATION, BoundKind.THM3_CF, cfg(3000))
    assert report.violations == 0
    with pytest.raises(DomainError):
        hz.check_bound_validity(MeasureKind.L1, BoundKind.THM2_RE, cfg(10))


def test_l1_saturation():
    assert hz.check_l1_saturation(cfg(20_000)).violations == 0
    # c = 0.5, P = 1: eigen-direction on the X axis gives 0 + 1 = 1
    rho = numlin.state_from_bloch([1.0, 0, 0])
    X = numlin.basis_from_bloch([1.0, 0, 0])
    total = coh.coherence_l1(rho, X) + coh.coherence_l1(rho, np.eye(2))
    assert abs(total - bounds.bound_thm4_l1(0.5, 1.0).raw) < 1e-12


def test_tightness_checks_small_grids():
    assert hz.check_tight_l1_exactness(5).violations == 0
    assert hz.check_tight_reduction(MeasureKind.FORMATION, 3).violations == 0
    assert hz.check_tight_dominance(6).violations == 0


def test_attainability():
    lower, upper = hz.check_attainability(cfg(4000))
    assert lower.violations == 0 and upper.violations == 0


# --- suites ----------------------------------------------------------------------

def test_suite_names():
    with pytest.raises(DomainError):
        hz.suite_checks("nope", 0, 10)
    assert len(hz.suite_checks("all", 0, 10)) == sum(
        len(hz.suite_checks(s, 0, 10)) for s in hz.SUITES)


def test_run_suite_parallel_matches_serial():
    serial = [r.to_text() for r in hz.run_suite("lemmas", seed=3, samples=3000)]
    threaded = [r.to_text() for r in hz.run_suite("lemmas", seed=3, samples=3000, jobs=4)]
    assert serial == threaded
