import itertools

import numpy as np
import pytest

from rdc_kernels.enumerators import SolveStatus, StepRule
from rdc_kernels.errors import LinearSubproblemError, MalformedProblemError
from rdc_kernels.solver import BlockMinorant, ConditionalGradient, LinearProgram, SolveReport, minimize_convex, solve_lp


def _enumerate_vertices(lp):
    constraints = np.vstack([lp.a, np.eye(lp.n), -np.eye(lp.n)])
    limits = np.concatenate([lp.b, lp.upper, -lp.lower])
    best = np.inf
    for rows in itertools.combinations(range(constraints.shape[0]), lp.n):
        system = constraints[list(rows)]
        if abs(np.linalg.det(system)) < 1e-12:
            continue
        point = np.linalg.solve(system, limits[list(rows)])
        if np.all(constraints @ point <= limits + 1e-9):
            best = min(best, float(lp.c @ point))
    return best


def test_solve_lp_on_a_single_box():
    report = solve_lp(LinearProgram(c=[1.0], a=np.zeros((0, 1)), b=[], lower=[0.0], upper=[1.0]))

    assert report.status is SolveStatus.OPTIMAL
    assert report.x[0] == 0.0
    assert report.objective == 0.0


def test_solve_lp_reports_inconsistent_constraints():
    report = solve_lp(LinearProgram(c=[1.0], a=[[1.0]], b=[-1.0], lower=[0.0], upper=[1.0]))

    assert report.status is SolveStatus.INFEASIBLE
    assert report.certificate == pytest.approx(1.0)


def test_solve_lp_on_the_two_symbol_decoder_problem():
    lp = LinearProgram(c=[-0.3, 0.3], a=[[0.09, 0.36]], b=[0.225], lower=[0.8, 0.0], upper=[1.0, 0.2])
    report = solve_lp(lp)

    assert report.optimal
    assert report.objective + 0.5 == pytest.approx(0.2, abs=1e-12)
    assert report.x == pytest.approx([1.0, 0.0], abs=1e-12)


def test_solve_lp_handles_negative_lower_bounds_and_binding_rows():
    lp = LinearProgram(c=[-1.0, -1.0], a=[[1.0, 2.0]], b=[1.0], lower=[-1.0, -1.0], upper=[2.0, 2.0])
    report = solve_lp(lp)

    assert report.optimal
    assert report.objective == pytest.approx(-2.0, abs=1e-12)
    assert report.residual <= 1e-9


@pytest.mark.parametrize('seed', range(25))
def test_solve_lp_matches_vertex_enumeration(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    m = int(rng.integers(1, 4))
    lower = rng.uniform(-1.0, 0.0, n)
    upper = lower + rng.uniform(0.5, 2.0, n)
    a = rng.normal(size=(m, n))
    b = a @ rng.uniform(lower, upper) + rng.uniform(0.0, 1.0, m)
    lp = LinearProgram(c=rng.normal(size=n), a=a, b=b, lower=lower, upper=upper)

    report = solve_lp(lp)

    assert report.optimal
    assert report.residual <= 1e-9
    assert report.objective == pytest.approx(_enumerate_vertices(lp), abs=1e-10)


def test_linear_program_validation():
    with pytest.raises(MalformedProblemError):
        LinearProgram(c=[1.0, 1.0], a=[[1.0]], b=[1.0], lower=[0.0, 0.0], upper=[1.0, 1.0])
    with pytest.raises(MalformedProblemError):
        LinearProgram(c=[1.0], a=[[1.0]], b=[1.0], lower=[1.0], upper=[0.0])
    with pytest.raises(MalformedProblemError):
        LinearProgram(c=[np.inf], a=[[1.0]], b=[1.0], lower=[0.0], upper=[1.0])


def _triangle():
    return LinearProgram(c=[0.0, 0.0], a=[[1.0, 1.0]], b=[1.0], lower=[0.0, 0.0], upper=[1.0, 1.0])


def test_minimize_convex_on_a_linear_objective_takes_one_step():
    polytope = _triangle()
    c = np.array([1.0, -2.0])
    report = minimize_convex(lambda x: float(c @ x), lambda x: c, polytope, starts=3)
    exact = solve_lp(polytope.with_objective(c))

    assert report.optimal
    assert report.iterations <= 1
    assert report.objective == pytest.approx(exact.objective, abs=1e-12)


def test_minimize_convex_finds_an_interior_quadratic_minimizer():
    target = np.array([0.3, 0.4])
    report = minimize_convex(lambda x: float(np.sum((x - target) ** 2)), lambda x: 2 * (x - target), _triangle(),
                             starts=2, max_iterations=20_000, tolerance=1e-13, step_rule=StepRule.LINE_SEARCH)

    assert report.x == pytest.approx(target, abs=1e-6)
    assert report.residual <= 1e-9


def test_minimize_convex_trace_is_monotone_with_open_loop_steps():
    target = np.array([0.8, 0.8])
    report = minimize_convex(lambda x: float(np.sum((x - target) ** 2)), lambda x: 2 * (x - target), _triangle(),
                             starts=2, max_iterations=500)

    assert all(later <= earlier for earlier, later in zip(report.trace, report.trace[1:]))
    assert report.objective == pytest.approx(0.18, abs=1e-2)


def test_minimize_convex_is_deterministic():
    target = np.array([0.2, 0.1])

    def run():
        return minimize_convex(lambda x: float(np.sum((x - target) ** 2)), lambda x: 2 * (x - target), _triangle(),
                               starts=4, seed=11, max_iterations=300, step_rule=StepRule.LINE_SEARCH)

    first, second = run(), run()
    assert first.objective == second.objective
    assert np.array_equal(first.x, second.x)
    assert first.trace == second.trace


def test_minimize_convex_reports_an_empty_polytope():
    polytope = LinearProgram(c=[0.0], a=[[1.0]], b=[-1.0], lower=[0.0], upper=[1.0])
    report = minimize_convex(lambda x: float(x[0] ** 2), lambda x: 2 * x, polytope)

    assert report.status is SolveStatus.INFEASIBLE


def _absolute_value():
    return BlockMinorant(blocks=((0,),), cuts=(np.array([[1.0], [-1.0]]),))


def test_block_minorant_lower_bound_respects_the_rows():
    polytope = LinearProgram(c=[0.0, 0.0], a=[[-1.0, 0.0]], b=[-0.5], lower=[-1.0, 0.0], upper=[2.0, 1.0])
    minorant = BlockMinorant(blocks=((0,), (1,)), cuts=(np.array([[1.0], [-1.0]]), np.array([[2.0]])))

    bound, point = minorant.lower_bound(polytope)

    assert bound == pytest.approx(0.5, abs=1e-12)
    assert point == pytest.approx([0.5, 0.0], abs=1e-12)
    assert minorant.evaluate([-0.75, 0.5]) == pytest.approx(1.75)


@pytest.mark.parametrize("blocks, cuts", [
    (((0,),), ()),
    (((0, 1),), (np.ones((2, 3)),)),
    (((0,),), (np.array([[np.inf]]),)),
])
def test_block_minorant_validation(blocks, cuts):
    with pytest.raises(MalformedProblemError):
        BlockMinorant(blocks=blocks, cuts=cuts)


def test_minorant_certifies_a_kink_the_gradient_cannot():
    polytope = LinearProgram(c=[0.0], a=np.zeros((0, 1)), b=[], lower=[-1.0], upper=[1.0])

    def solve(**kwargs):
        return minimize_convex(lambda x: float(abs(x[0])), lambda x: np.where(x >= 0, 1.0, -1.0), polytope,
                               starts=1, max_iterations=50, **kwargs)

    assert solve().status is SolveStatus.ITERATION_LIMIT
    report = solve(minorant=lambda anchors: _absolute_value())
    assert report.optimal
    assert report.objective == pytest.approx(0.0, abs=1e-12)
    assert report.gap <= 1e-9


def test_failed_linear_subproblem_raises_with_its_status(mocker):
    polytope = LinearProgram(c=[0.0], a=np.zeros((0, 1)), b=[], lower=[-1.0], upper=[1.0])
    mocker.patch("rdc_kernels.solver.conditional_gradient.solve_lp",
                 return_value=SolveReport(status=SolveStatus.UNBOUNDED, objective=-np.inf, x=[0.0], gap=np.inf,
                                          iterations=3))
    solver = ConditionalGradient(lambda x: float(x[0] ** 2), lambda x: 2 * x, polytope, StepRule.OPEN_LOOP,
                                 max_iterations=10, tolerance=1e-9)

    with pytest.raises(LinearSubproblemError) as error:
        solver.linear_minimizer(np.array([1.0]))

    assert error.value.status is SolveStatus.UNBOUNDED
