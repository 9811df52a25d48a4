import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdc_kernels.binary_info import SourceModel, binary_entropy, mgl_threshold, task_prior_m
from rdc_kernels.errors import DomainError, InfeasibleClassificationError, InfeasibleProblemError
from rdc_kernels.oneshot import OperatingPoint, SeedDistribution, asymptotic_b, asymptotic_drc, asymptotic_rdc, \
    classification_rate_floor, drc_breakpoint, feasible, oneshot_drc, oneshot_rdc, rdc_breakpoint

REFERENCE_MODEL = SourceModel(0.3, 0.2)
H_03 = binary_entropy(0.3)
H_02 = binary_entropy(0.2)
H_062 = binary_entropy(0.62)


def _random_feasible_points(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        model = SourceModel(*rng.uniform(0.01, 0.49, size=2))
        c = rng.uniform(binary_entropy(model.q_s1), 1.0)
        yield model, OperatingPoint(rng.uniform(0.0, 1.0), c)


def test_feasible():
    assert feasible(REFERENCE_MODEL, 0.8)
    assert not feasible(REFERENCE_MODEL, 0.5)
    assert feasible(SourceModel(0.3, 0.0), 0.0)


def test_oneshot_rdc_reference_values():
    assert oneshot_rdc(REFERENCE_MODEL, OperatingPoint(0.0, 0.8)).rate == pytest.approx(0.881291, abs=1e-6)
    plateau = oneshot_rdc(REFERENCE_MODEL, OperatingPoint(0.5, 0.8)).rate
    assert plateau == pytest.approx(H_03 * (H_062 - 0.8) / (H_062 - H_02), abs=1e-12)
    assert plateau == pytest.approx(0.589889, abs=1e-5)
    assert rdc_breakpoint(REFERENCE_MODEL, 0.8) == pytest.approx(0.099196, abs=1e-6)


def test_oneshot_rdc_vanishes_when_both_budgets_are_loose():
    result = oneshot_rdc(REFERENCE_MODEL, OperatingPoint(0.5, 0.97))

    assert result.rate == 0.0
    assert result.seed == SeedDistribution(0.0, 0.0, 1.0, 0.0)


def test_oneshot_rdc_assigns_zero_rate_at_the_equality_corner():
    h_m = binary_entropy(task_prior_m(REFERENCE_MODEL))
    assert oneshot_rdc(REFERENCE_MODEL, OperatingPoint(0.3, h_m)).rate == 0.0


def test_oneshot_rdc_on_a_constant_source():
    result = oneshot_rdc(SourceModel(0.0, 0.2), OperatingPoint(0.0, 0.8))

    assert result.rate == 0.0
    assert result.seed == SeedDistribution(0.0, 0.0, 1.0, 0.0)


def test_oneshot_rdc_rejects_infeasible_classification():
    with pytest.raises(InfeasibleClassificationError):
        oneshot_rdc(REFERENCE_MODEL, OperatingPoint(0.2, 0.5))


def test_oneshot_rdc_branches_meet_at_the_breakpoint():
    for model, point in _random_feasible_points(200, seed=3):
        if point.c >= binary_entropy(task_prior_m(model)):
            continue
        breakpoint_ = rdc_breakpoint(model, point.c)
        linear = binary_entropy(model.q_x) * (model.q_x - breakpoint_) / model.q_x
        plateau = oneshot_rdc(model, OperatingPoint(breakpoint_, point.c)).rate
        assert linear == pytest.approx(plateau, abs=1e-12)


def test_oneshot_rdc_seed_reconstructs_the_rate_and_constraints():
    for model, point in _random_feasible_points(500, seed=5):
        rate, seed = oneshot_rdc(model, point)
        assert seed.rate(model) == pytest.approx(rate, abs=1e-12)
        assert seed.distortion(model) <= point.d + 1e-12
        assert seed.classification(model) <= point.c + 1e-12


def test_oneshot_rdc_is_nonincreasing_in_both_budgets():
    distortions = np.linspace(0.0, 1.0, 101)
    rates = [oneshot_rdc(REFERENCE_MODEL, OperatingPoint(d, 0.8)).rate for d in distortions]
    assert all(later <= earlier + 1e-15 for earlier, later in zip(rates, rates[1:]))

    budgets = np.linspace(H_02, 1.0, 101)
    rates = [oneshot_rdc(REFERENCE_MODEL, OperatingPoint(0.05, c)).rate for c in budgets]
    assert all(later <= earlier + 1e-15 for earlier, later in zip(rates, rates[1:]))


def test_oneshot_drc_examples():
    assert oneshot_drc(REFERENCE_MODEL, 1.0, 0.97).distortion == 0.0
    assert oneshot_drc(REFERENCE_MODEL, 0.0, 1.0).distortion == pytest.approx(0.3, abs=1e-15)
    assert oneshot_drc(REFERENCE_MODEL, 0.7, 0.8).distortion == pytest.approx(0.3 * (H_03 - 0.7) / H_03, abs=1e-15)


def test_oneshot_drc_below_the_classification_rate_floor_is_infeasible():
    with pytest.raises(InfeasibleProblemError) as error:
        oneshot_drc(REFERENCE_MODEL, 0.4, 0.8)

    assert error.value.details['boundary_distortion'] == pytest.approx(0.099196, abs=1e-6)
    assert error.value.details['required_rate'] == pytest.approx(classification_rate_floor(REFERENCE_MODEL, 0.8))


def test_oneshot_drc_reaches_the_boundary_distortion_at_the_rate_floor():
    floor = classification_rate_floor(REFERENCE_MODEL, 0.8)
    distortion = oneshot_drc(REFERENCE_MODEL, floor, 0.8).distortion

    assert distortion == pytest.approx(rdc_breakpoint(REFERENCE_MODEL, 0.8), abs=1e-12)
    assert drc_breakpoint(REFERENCE_MODEL, floor) == pytest.approx(0.8, abs=1e-12)


def test_oneshot_drc_validates_its_budgets():
    with pytest.raises(DomainError):
        oneshot_drc(REFERENCE_MODEL, -0.1, 0.9)
    with pytest.raises(InfeasibleClassificationError):
        oneshot_drc(REFERENCE_MODEL, 0.5, 0.6)


def test_oneshot_drc_is_nonincreasing_in_rate_and_classification():
    distortions = [oneshot_drc(REFERENCE_MODEL, r, 0.97).distortion for r in np.linspace(0.0, 1.2, 61)]
    assert all(later <= earlier + 1e-15 for earlier, later in zip(distortions, distortions[1:]))

    floor_budget = drc_breakpoint(REFERENCE_MODEL, 0.7)
    distortions = [oneshot_drc(REFERENCE_MODEL, 0.7, c).distortion for c in np.linspace(floor_budget, 1.0, 41)]
    assert all(later <= earlier + 1e-15 for earlier, later in zip(distortions, distortions[1:]))


def test_rate_and_distortion_functions_are_consistent():
    for model, point in _random_feasible_points(500, seed=9):
        rate, _ = oneshot_rdc(model, point)
        assert oneshot_drc(model, rate, point.c).distortion <= point.d + 1e-9


@given(st.floats(min_value=0.0, max_value=1.5))
@settings(max_examples=100)
def test_oneshot_drc_seed_matches_the_distortion(r):
    distortion, seed = oneshot_drc(REFERENCE_MODEL, r, 0.99)

    assert seed.distortion(REFERENCE_MODEL) == pytest.approx(distortion, abs=1e-12)
    assert seed.rate(REFERENCE_MODEL) <= r + 1e-12


def test_asymptotic_b():
    assert asymptotic_b(REFERENCE_MODEL) == pytest.approx(0.3)
    assert asymptotic_b(SourceModel(0.2, 0.05)) == pytest.approx(0.2)
    assert asymptotic_b(SourceModel(0.5, 0.3)) == pytest.approx(0.5)


def test_asymptotic_rdc_cases():
    assert asymptotic_rdc(REFERENCE_MODEL, OperatingPoint(0.3, 1.0)) == pytest.approx(0.0, abs=1e-15)
    first = asymptotic_rdc(REFERENCE_MODEL, OperatingPoint(0.05, 1.0))
    assert first == pytest.approx(H_03 - binary_entropy(0.05), abs=1e-15)
    assert first == pytest.approx(0.594894, abs=1e-6)

    c0 = mgl_threshold(REFERENCE_MODEL, 0.8)
    plateau = asymptotic_rdc(REFERENCE_MODEL, OperatingPoint(0.25, 0.8))
    assert plateau == pytest.approx(H_03 - binary_entropy(c0), abs=1e-15)


def test_asymptotic_rdc_is_continuous_at_the_threshold():
    c0 = mgl_threshold(REFERENCE_MODEL, 0.85)
    below = asymptotic_rdc(REFERENCE_MODEL, OperatingPoint(c0 - 1e-12, 0.85))
    at = asymptotic_rdc(REFERENCE_MODEL, OperatingPoint(c0, 0.85))

    assert below == pytest.approx(at, abs=1e-9)


@pytest.mark.parametrize('c', [0.8, 0.9, 1.0])
def test_asymptotic_rate_stays_below_the_oneshot_rate(c):
    for d in np.linspace(0.0, 1.0, 101):
        point = OperatingPoint(d, c)
        assert asymptotic_rdc(REFERENCE_MODEL, point) <= oneshot_rdc(REFERENCE_MODEL, point).rate + 1e-12


def test_asymptotic_drc_inverts_the_rate_function():
    for r in np.linspace(0.0, 0.88, 23):
        try:
            d = asymptotic_drc(REFERENCE_MODEL, r, 0.95)
        except InfeasibleProblemError:
            continue
        assert asymptotic_rdc(REFERENCE_MODEL, OperatingPoint(d, 0.95)) <= r + 1e-9
    assert asymptotic_drc(REFERENCE_MODEL, 0.0, 1.0) == pytest.approx(0.3, abs=1e-11)
    assert asymptotic_drc(REFERENCE_MODEL, 1.0, 1.0) == 0.0


def test_asymptotic_drc_below_the_plateau_is_infeasible():
    c0 = mgl_threshold(REFERENCE_MODEL, 0.8)
    with pytest.raises(InfeasibleProblemError) as error:
        asymptotic_drc(REFERENCE_MODEL, 0.1, 0.8)

    assert error.value.details['required_rate'] == pytest.approx(H_03 - binary_entropy(c0))
