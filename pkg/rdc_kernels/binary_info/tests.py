import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdc_kernels.binary_info import SourceModel, binary_convolution, binary_entropy, binary_entropy_array, \
    entropy_gap, inverse_binary_entropy, is_feasible, mgl_threshold, task_prior_m
from rdc_kernels.errors import DegenerateModelError, DomainError, InfeasibleClassificationError


def test_binary_entropy_known_values():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.3) == pytest.approx(0.881291, abs=1e-6)
    assert binary_entropy(0.2) == pytest.approx(0.721928, abs=1e-6)
    assert binary_entropy(0.62) == pytest.approx(0.958042, abs=1e-6)


def test_binary_entropy_rejects_out_of_range():
    with pytest.raises(DomainError):
        binary_entropy(1.5)


def test_binary_entropy_array_matches_scalar():
    points = np.array([0.0, 0.05, 0.3, 0.5, 0.8, 1.0])
    expected = [binary_entropy(p) for p in points]
    assert binary_entropy_array(points) == pytest.approx(expected, abs=1e-15)


@given(st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=200)
def test_binary_entropy_is_symmetric(p):
    assert binary_entropy(p) == pytest.approx(binary_entropy(1 - p), abs=1e-12)


def test_inverse_binary_entropy_endpoints():
    assert inverse_binary_entropy(1.0) == 0.5
    assert inverse_binary_entropy(0.0) == 0.0
    assert inverse_binary_entropy(binary_entropy(0.2)) == pytest.approx(0.2, abs=1e-11)
    assert inverse_binary_entropy(0.721928) == pytest.approx(0.2, abs=1e-6)


def test_inverse_binary_entropy_round_trip_on_grid():
    grid = np.linspace(0.0, 1.0, 1000)
    residuals = [abs(binary_entropy(inverse_binary_entropy(h)) - h) for h in grid]
    assert max(residuals) <= 1e-10


def test_inverse_binary_entropy_is_monotone():
    values = [inverse_binary_entropy(h) for h in np.linspace(0.0, 1.0, 200)]
    assert all(later >= earlier for earlier, later in zip(values, values[1:]))


def test_inverse_binary_entropy_clamps_round_off_and_rejects_the_rest():
    assert inverse_binary_entropy(1.0 + 1e-13) == 0.5
    with pytest.raises(DomainError):
        inverse_binary_entropy(1.01)
    with pytest.raises(DomainError):
        inverse_binary_entropy(-0.1)


def test_binary_convolution_examples():
    assert binary_convolution(0.37, 0.5) == pytest.approx(0.5)
    assert binary_convolution(0.2, 0.0) == pytest.approx(0.2)
    assert binary_convolution(0.3, 0.2) == pytest.approx(0.38)


@given(st.floats(min_value=0.0, max_value=0.5), st.floats(min_value=0.0, max_value=0.5))
def test_binary_convolution_dominates_its_arguments(a, b):
    assert binary_convolution(a, b) == pytest.approx(binary_convolution(b, a))
    assert binary_convolution(a, b) >= max(a, b) - 1e-15


def test_task_prior_m_examples():
    assert task_prior_m(SourceModel(0.3, 0.2)) == pytest.approx(0.62)
    assert task_prior_m(SourceModel(0.0, 0.3)) == pytest.approx(0.7)
    assert task_prior_m(SourceModel(0.5, 0.1)) == pytest.approx(0.5)
    model = SourceModel(0.3, 0.2)
    assert task_prior_m(model) == pytest.approx(1 - model.q_s)


def test_entropy_ordering_on_random_models():
    rng = np.random.default_rng(7)
    for q_x, q_s1 in rng.uniform(0.0, 0.4999, size=(10_000, 2)):
        model = SourceModel(q_x, q_s1)
        m = task_prior_m(model)
        assert entropy_gap(model) >= -1e-15
        assert abs(m - 0.5) == pytest.approx(2 * abs(q_x - 0.5) * abs(q_s1 - 0.5), abs=1e-15)


def test_entropy_gap_vanishes_for_constant_source():
    assert entropy_gap(SourceModel(0.0, 0.2)) == pytest.approx(0.0, abs=1e-15)


def test_source_model_validation():
    with pytest.raises(DegenerateModelError):
        SourceModel(0.3, 0.5)
    with pytest.raises(DomainError):
        SourceModel(0.6, 0.2)
    with pytest.raises(DomainError):
        SourceModel(0.3, -0.2)


def test_feasibility_threshold():
    assert is_feasible(SourceModel(0.3, 0.2), 0.8)
    assert not is_feasible(SourceModel(0.3, 0.2), 0.5)
    assert is_feasible(SourceModel(0.3, 0.0), 0.0)


def test_mgl_threshold_examples():
    assert mgl_threshold(SourceModel(0.3, 0.0), 0.6) == pytest.approx(inverse_binary_entropy(0.6), abs=1e-15)
    assert mgl_threshold(SourceModel(0.3, 0.05), 1.0) == pytest.approx(0.5, abs=1e-12)


def test_mgl_threshold_inverts_the_classification_constraint():
    model = SourceModel(0.3, 0.2)
    c0 = mgl_threshold(model, 0.8)
    assert 0.0 <= c0 <= 0.5
    assert binary_entropy(binary_convolution(model.q_s1, c0)) == pytest.approx(0.8, abs=1e-10)


def test_mgl_threshold_rejects_infeasible_budget():
    with pytest.raises(InfeasibleClassificationError) as error:
        mgl_threshold(SourceModel(0.3, 0.2), 0.5)

    assert error.value.threshold == pytest.approx(0.721928, abs=1e-6)
    assert '0.721928' in str(error.value)
