import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdc_kernels.binary_info import SourceModel, binary_convolution, binary_entropy, inverse_binary_entropy
from rdc_kernels.enumerators import RateBound, SolveStatus
from rdc_kernels.errors import ConvergenceError, DomainError, InfeasibleProblemError
from rdc_kernels.solver import SolveReport
from rdc_kernels.universal import JointDecoderPMF, UniversalSettings, i_lb, i_lb_free, i_lb_gradient, \
    i_lb_minorant, mutual_information_exact, rate_penalty_bounds, rate_penalty_lower, rate_penalty_upper, \
    theta_boundary, theta_constraints

MODEL = SourceModel(q_x=0.2, q_s1=0.05)
FAST = UniversalSettings(starts=2)


def vertex_optimum(r):
    c0 = theta_boundary(MODEL, r).c0
    q = MODEL.q_x
    mix = 1 - q + c0
    rate = -(1 - q) * math.log2(mix) + (c0 * math.log2(c0 / q / mix) if c0 > 0 else 0.0)

    return np.array([1.0, 0.0, 0.0, c0 / q, 0.0, 0.0]), rate


def random_pmfs(count, seed=7):
    rng = np.random.default_rng(seed)
    tables = rng.dirichlet(np.ones(4), size=(count, 2)).reshape(count, 2, 2, 2)

    return [JointDecoderPMF(table) for table in tables], rng.uniform(0.01, 0.49, size=count)


def test_theta_boundary_values_and_residuals():
    boundary = theta_boundary(MODEL, 0.1)

    assert boundary.b == pytest.approx(0.2)
    assert boundary.c0 == pytest.approx(0.1549, abs=1e-3)
    assert boundary.c_min == pytest.approx(0.7002, abs=1e-3)
    assert abs(binary_entropy(boundary.b) - binary_entropy(boundary.c0) - 0.1) <= 1e-10
    assert abs(inverse_binary_entropy(boundary.c_min) - (0.05 + 0.9 * boundary.c0)) <= 1e-10


def test_theta_boundary_limits():
    small = theta_boundary(MODEL, 1e-9)
    assert small.c0 == pytest.approx(0.2, abs=1e-6)
    assert small.c_min == pytest.approx(binary_entropy(0.05 + 0.9 * 0.2), abs=1e-6)

    assert theta_boundary(MODEL, binary_entropy(0.2)).c0 == 0.0


@pytest.mark.parametrize('r', [0.0, -0.1, 0.73])
def test_theta_boundary_rejects_rates_outside_the_interval(r):
    with pytest.raises(DomainError, match='admissible interval'):
        theta_boundary(MODEL, r)


def test_pmf_free_coordinates_close_each_slice():
    pmf = JointDecoderPMF.from_free([0.5, 0.2, 0.1, 0.0, 0.3, 0.7])

    assert pmf.table[0, 1, 0] == pytest.approx(0.2)
    assert pmf.table[1, 1, 0] == 0.0
    assert pmf.free == pytest.approx([0.5, 0.2, 0.1, 0.0, 0.3, 0.7])
    assert pmf.one_crossover(1) == pytest.approx(0.3)
    assert pmf.one_crossover(2) == pytest.approx(0.3)


def test_pmf_validation():
    with pytest.raises(DomainError):
        JointDecoderPMF.from_free([0.6, 0.6, 0.0, 0.0, 0.0, 1.0])
    with pytest.raises(DomainError):
        JointDecoderPMF(np.full((2, 2, 2), 0.3))
    with pytest.raises(DomainError):
        JointDecoderPMF.from_free([1.0, 0.0])
    with pytest.raises(DomainError):
        JointDecoderPMF.from_free(np.zeros(6)).error_probability(0.2, 3)


def test_surrogate_of_identical_slices_is_zero():
    pmf = JointDecoderPMF.from_free([0.1, 0.2, 0.3, 0.1, 0.2, 0.3])

    assert i_lb(0.3, pmf) == pytest.approx(0.0, abs=1e-15)
    assert mutual_information_exact(0.3, pmf) == pytest.approx(0.0, abs=1e-15)


def test_revealing_decoder_carries_the_source_entropy():
    pmf = JointDecoderPMF.from_free([1.0, 0.0, 0.0, 0.0, 0.0, 1.0])

    assert i_lb(0.3, pmf) == pytest.approx(0.881291, abs=1e-6)
    assert mutual_information_exact(0.3, pmf) == pytest.approx(0.8812908993, abs=1e-9)


def test_surrogate_never_exceeds_the_mutual_information():
    pmfs, priors = random_pmfs(10_000)

    for pmf, q in zip(pmfs, priors):
        exact = mutual_information_exact(q, pmf)
        assert -1e-12 <= i_lb(q, pmf) <= exact + 1e-12
        assert exact <= binary_entropy(q) + 1e-12


def test_constraint_rows_are_the_decoder_probabilities():
    boundary = theta_boundary(MODEL, 0.1)
    lower = theta_constraints(MODEL, boundary, RateBound.LOWER)
    upper = theta_constraints(MODEL, boundary, RateBound.UPPER)
    literal = theta_constraints(MODEL, boundary, RateBound.UPPER, literal_upper=True)
    q, s = MODEL.q_x, MODEL.q_s1
    prior = np.array([1 - q, q])

    for pmf, _ in zip(*random_pmfs(200, seed=11)):
        table = pmf.table
        error_1 = sum(prior[k] * table[k, i, j] for k in (0, 1) for i in (0, 1) for j in (0, 1) if i != k)
        error_2 = sum(prior[k] * table[k, i, j] for k in (0, 1) for i in (0, 1) for j in (0, 1) if j != k)
        one_1 = table[0, 1, 0] + table[0, 1, 1]
        one_2 = table[0, 0, 1] + table[0, 1, 1]

        rows = lower.left_sides(pmf.free)
        assert rows[:4] == pytest.approx([error_1, error_2, binary_convolution(s, one_1), binary_convolution(s, one_2)],
                                         abs=1e-12)
        assert upper.left_sides(pmf.free)[2] == pytest.approx(one_1, abs=1e-12)
        assert literal.left_sides(pmf.free)[2] == pytest.approx(binary_convolution(s, one_1), abs=1e-12)


def test_gradient_matches_finite_differences():
    coords = np.array([0.4, 0.3, 0.2, 0.1, 0.25, 0.5])
    step = 1e-7
    numeric = [(i_lb_free(0.3, coords + step * e) - i_lb_free(0.3, coords - step * e)) / (2 * step)
               for e in np.eye(6)]

    assert i_lb_gradient(0.3, coords) == pytest.approx(numeric, abs=1e-6)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.floats(min_value=0.01, max_value=0.49))
def test_surrogate_is_convex_along_segments(seed, q):
    rng = np.random.default_rng(seed)
    first, second = (rng.dirichlet(np.ones(4), size=2).reshape(2, 2, 2) for _ in range(2))
    x, y = JointDecoderPMF(first).free, JointDecoderPMF(second).free

    assert i_lb_free(q, (x + y) / 2) <= (i_lb_free(q, x) + i_lb_free(q, y)) / 2 + 1e-10


def test_lower_bound_at_the_top_of_the_interval():
    solution = rate_penalty_lower(MODEL, binary_entropy(0.2), FAST)

    assert solution.rate == pytest.approx(-0.8 * math.log2(0.8), abs=1e-6)
    assert solution.pmf.free[0] == pytest.approx(1.0, abs=1e-6)
    assert solution.pmf.free[5] == pytest.approx(0.0, abs=1e-6)


def test_upper_bound_forces_the_first_crossover_to_zero():
    solution = rate_penalty_upper(MODEL, 0.1, FAST)

    assert solution.status is SolveStatus.OPTIMAL
    assert solution.pmf.table[0, 1, 0] == 0.0
    assert solution.pmf.table[0, 1, 1] == 0.0
    assert solution.exact_information >= solution.rate - 1e-12


def test_literal_upper_constraint_is_infeasible():
    with pytest.raises(InfeasibleProblemError) as error:
        rate_penalty_upper(MODEL, 0.1, UniversalSettings(starts=1, literal_upper_constraint=True))

    assert error.value.details['bound'] == 'ub'


@pytest.mark.parametrize('r', [0.05, 0.1, 0.2])
def test_bounds_are_ordered_and_feasible(r):
    boundary = theta_boundary(MODEL, r)
    lower = rate_penalty_lower(MODEL, r, FAST)
    upper = rate_penalty_upper(MODEL, r, FAST)

    assert lower.status is SolveStatus.OPTIMAL and upper.status is SolveStatus.OPTIMAL
    assert lower.rate <= upper.rate + 1e-8
    assert theta_constraints(MODEL, boundary, RateBound.LOWER).residual(lower.pmf.free) <= 1e-9
    assert theta_constraints(MODEL, boundary, RateBound.UPPER).residual(upper.pmf.free) <= 1e-9
    assert theta_constraints(MODEL, boundary, RateBound.LOWER).residual(upper.pmf.free) <= 1e-9
    assert i_lb(MODEL.q_x, upper.pmf) >= lower.rate - lower.gap - 1e-12


def test_penalties_are_measured_from_the_rate_level():
    bounds = rate_penalty_bounds(MODEL, 0.1, FAST)

    assert bounds.penalty_lb == pytest.approx(bounds.r_lb - 0.1)
    assert bounds.penalty_ub == pytest.approx(bounds.r_ub - 0.1)


def test_exhausted_budget_raises_with_the_best_iterate(mocker):
    stopped = SolveReport(status=SolveStatus.ITERATION_LIMIT, objective=0.01, x=np.full(6, 0.2), gap=1e-3,
                          iterations=100_000)
    mocker.patch('rdc_kernels.universal.universal.minimize_convex', return_value=stopped)

    with pytest.raises(ConvergenceError) as error:
        rate_penalty_lower(MODEL, 0.1)

    assert error.value.gap == 1e-3
    assert error.value.best_iterate == pytest.approx(np.full(6, 0.2))


@pytest.mark.parametrize('kwargs', [{'gap_tolerance': 0.0}, {'starts': 0}, {'max_iterations': -1}])
def test_settings_validation(kwargs):
    with pytest.raises(DomainError):
        UniversalSettings(**kwargs)


@pytest.mark.parametrize('r', [0.05, 0.1, 0.2])
@pytest.mark.parametrize('solve', [rate_penalty_lower, rate_penalty_upper])
def test_reference_grid_is_certified_at_the_closed_form_optimum(solve, r):
    optimum, rate = vertex_optimum(r)

    solution = solve(MODEL, r, FAST)

    assert solution.status is SolveStatus.OPTIMAL
    assert solution.gap <= 1e-9
    assert solution.rate == pytest.approx(rate, abs=1e-9)
    assert solution.pmf.free == pytest.approx(optimum, abs=1e-6)


def test_default_settings_certify_the_reference_grid():
    lower = rate_penalty_lower(MODEL, 0.1)

    assert lower.status is SolveStatus.OPTIMAL
    assert lower.rate == pytest.approx(vertex_optimum(0.1)[1], abs=1e-9)


def test_minorant_at_the_optimum_closes_the_gap():
    optimum, rate = vertex_optimum(0.1)
    polytope = theta_constraints(MODEL, theta_boundary(MODEL, 0.1), RateBound.LOWER).polytope()

    bound, point = i_lb_minorant(MODEL.q_x, optimum).lower_bound(polytope)

    assert bound == pytest.approx(rate, abs=1e-9)
    assert i_lb_free(MODEL.q_x, optimum) == pytest.approx(rate, abs=1e-12)
    assert polytope.residual(point) <= 1e-9


def test_empty_cells_get_the_ratio_one_subgradient():
    gradient = i_lb_gradient(0.2, [1.0, 0.0, 0.0, 0.5, 0.0, 0.3])

    assert gradient[[1, 4]] == pytest.approx([0.0, 0.0])
    assert gradient[2] < -10
    assert gradient[5] == pytest.approx(0.2 * math.log2(1 / 0.2))


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.floats(min_value=0.01, max_value=0.99))
def test_minorant_never_exceeds_the_surrogate(seed, q):
    rng = np.random.default_rng(seed)
    anchors = [JointDecoderPMF(rng.dirichlet(np.ones(4), size=2).reshape(2, 2, 2)).free for _ in range(2)]
    anchors[1][rng.integers(0, 3)] = 0.0
    point = JointDecoderPMF(rng.dirichlet(np.ones(4), size=2).reshape(2, 2, 2)).free

    assert i_lb_minorant(q, anchors).evaluate(point) <= i_lb_free(q, point) + 1e-12
    assert i_lb_minorant(q, anchors).evaluate(anchors[0]) == pytest.approx(i_lb_free(q, anchors[0]), abs=1e-9)
