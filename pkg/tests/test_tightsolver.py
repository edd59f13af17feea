import numpy as np
import pytest

from oracles import h2
from qucoh import bounds, tightsolver as ts
from qucoh.coherence import MeasureKind
from qucoh.errors import DomainError

MEASURES = list(MeasureKind)


def test_objective_examples():
    re1 = ts.Objective(MeasureKind.RELATIVE_ENTROPY, 1.0)
    assert abs(re1(0.5) - 1.0) < 1e-15
    assert abs(ts.Objective(MeasureKind.L1, 0.75)(0.5) - 0.5) < 1e-15
    for m in MEASURES:
        for p in (0.5, 0.7, 1.0):
            f = ts.Objective(m, p)
            assert abs(f(0.0)) < 1e-15 and abs(f(1.0)) < 1e-15


def test_relative_entropy_objective_against_oracle():
    f = ts.Objective(MeasureKind.RELATIVE_ENTROPY, 0.8)
    for x in (0.1, 0.3, 0.77):
        expected = h2(x * 0.8 + (1 - x) * 0.2) - h2(0.8)
        assert abs(f(x) - float(expected)) < 1e-13


@pytest.mark.parametrize("measure", MEASURES)
def test_objective_symmetric_and_concave(measure):
    x = np.linspace(0, 1, 2001)
    h = x[1] - x[0]
    for p in (0.55, 0.8, 0.97, 1.0):
        f = ts.Objective(measure, p)
        assert np.max(np.abs(f(x) - f(1 - x))) < 1e-12
        second = f(x[2:]) - 2 * f(x[1:-1]) + f(x[:-2])
        assert np.all(second <= 1e-8 * h * h + 1e-15)


def test_objective_domain():
    with pytest.raises(DomainError):
        ts.Objective(MeasureKind.L1, 0.8)(1.2)
    with pytest.raises(DomainError):
        ts.make_objective(MeasureKind.L1, 0.2)


def test_solver_options_validation():
    with pytest.raises(DomainError):
        ts.SolverOptions(grid_points=8)
    with pytest.raises(DomainError):
        ts.SolverOptions(refine_tolerance=0)


def test_relative_entropy_mub_pure():
    result = ts.tight_bound_1d(MeasureKind.RELATIVE_ENTROPY, 0.5, 1.0)
    assert abs(result.value - 1.0) < 1e-9
    assert abs(result.argmin_alpha - np.pi / 2) < 1e-9
    assert result.method == "boundary_1d"


@pytest.mark.parametrize("measure", MEASURES)
def test_zero_at_maximally_mixed_and_identical_bases(measure):
    for c in (0.5, 0.8, 1.0):
        assert abs(ts.tight_bound_1d(measure, c, 0.5).value) < 1e-12
    for P in (0.5, 0.8, 1.0):
        assert abs(ts.tight_bound_1d(measure, 1.0, P).value) < 1e-12
        assert abs(ts.tight_bound_2d_crosscheck(measure, 1.0, P, 64)) < 1e-12


@pytest.mark.parametrize("measure", MEASURES)
def test_value_not_above_endpoints(measure):
    for c in np.linspace(0.5, 0.99, 7):
        for P in (0.6, 0.9):
            res = ts.tight_bound_1d(measure, c, P)
            gamma = ts.bases_angle(c)
            f = ts.make_objective(measure, P)
            ends = [f.of_angle(a) + f.of_angle(gamma - a) for a in (gamma / 2, gamma)]
            assert res.value <= min(ends) + 1e-12
            assert gamma / 2 - 1e-15 <= res.argmin_alpha <= gamma + 1e-15


def test_l1_matches_closed_form_on_grid():
    for c in np.linspace(0.5, 1, 11):
        for P in np.linspace(0.5, 1, 11):
            diff = ts.tight_bound_1d(MeasureKind.L1, c, P).value - bounds.bound_thm4_l1(c, P).raw
            assert abs(diff) < 1e-9


def test_crosscheck_examples():
    assert abs(ts.tight_bound_2d_crosscheck(MeasureKind.L1, 0.75, 1.0)
               - 2 * np.sqrt(0.75 * 0.25)) < 1e-6
    assert abs(ts.tight_bound_2d_crosscheck(MeasureKind.RELATIVE_ENTROPY, 0.5, 1.0) - 1) < 1e-6


@pytest.mark.parametrize("measure", MEASURES)
def test_crosscheck_agrees_with_1d(measure):
    for c, P in [(0.55, 0.7), (0.8, 0.95), (0.95, 0.6), (0.62, 1.0)]:
        one = ts.tight_bound_1d(measure, c, P).value
        two = ts.tight_bound_2d_crosscheck(measure, c, P)
        assert abs(two - one) < 1e-6


def test_deterministic():
    a = ts.tight_bound_1d(MeasureKind.FORMATION, 0.71, 0.83)
    b = ts.tight_bound_1d(MeasureKind.FORMATION, 0.71, 0.83)
    assert a == b


def test_feasible_vertices():
    (a1, b1), (a2, b2) = ts.feasible_region_vertices(0.5)
    assert a1 == a2 == 0 and abs(b1 - b2) < 1e-15 and abs(b1 - 0.7071067811865476) < 1e-15
    assert ts.feasible_region_vertices(1.0) == [(0.0, 1.0), (0.0, 0.0)]
    (_, b1), (_, b2) = ts.feasible_region_vertices(0.75)
    assert abs(b1 - 0.8660254037844386) < 1e-15 and abs(b2 - 0.5) < 1e-15
    f = ts.make_objective(MeasureKind.RELATIVE_ENTROPY, 0.9)
    g = [f(a) + f(b) for a, b in ts.feasible_region_vertices(0.75)]
    assert g[0] <= g[1]
    with pytest.raises(DomainError):
        ts.feasible_region_vertices(0.2)
