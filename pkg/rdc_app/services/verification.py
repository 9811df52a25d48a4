import logging
from typing import Callable, Dict, List, Optional

import numpy as np

from rdc_kernels.binary_info import SourceModel, binary_entropy, inverse_binary_entropy, task_prior_m
from rdc_kernels.dc_region import RepresentationChannel, dc_lower_boundary, dc_problem, knapsack_boundary
from rdc_kernels.enumerators import RateBound, SolveStatus, VerifyScope
from rdc_kernels.errors import InfeasibleProblemError
from rdc_kernels.oneshot import OperatingPoint, asymptotic_rdc, oneshot_drc, oneshot_rdc, rdc_breakpoint
from rdc_kernels.oracle import GridSpec, VerificationCheck, dc_grid_oracle, four_map_enumeration_oracle, \
    projected_gradient_oracle, scalar_lp_oracle_drc, scalar_lp_oracle_rdc
from rdc_kernels.solver import solve_lp
from rdc_kernels.universal import JointDecoderPMF, UniversalSettings, i_lb, mutual_information_exact, \
    rate_penalty_lower, rate_penalty_upper, theta_boundary, theta_constraints

REFERENCE_MODEL = SourceModel(q_x=0.3, q_s1=0.2)
UNIVERSAL_MODEL = SourceModel(q_x=0.2, q_s1=0.05)
TWO_SYMBOLS = RepresentationChannel(q=(0.5, 0.5), eps=(0.2, 0.8))
FOUR_SYMBOLS = RepresentationChannel(q=(0.2, 0.3, 0.1, 0.4), eps=(0.15, 0.35, 0.65, 0.85))
UNIVERSAL_RATES = (0.05, 0.1, 0.2)
DEFAULT_RESOLUTION = 101
DC_RESOLUTION = 201


def _maybe(function: Callable, *args):
    try:
        return function(*args)
    except InfeasibleProblemError:
        return None


class VerificationService:
    def __init__(self, scope: VerifyScope, resolution: Optional[int], seed: int, logger: logging.Logger):
        self.scope = scope
        self.resolution = resolution
        self.seed = seed
        self.logger = logger

    def run(self) -> List[VerificationCheck]:
        families: Dict[VerifyScope, Callable[[], List[VerificationCheck]]] = {
            VerifyScope.ONESHOT: self.oneshot_checks,
            VerifyScope.DC: self.dc_checks,
            VerifyScope.UNIVERSAL: self.universal_checks,
        }
        selected = list(families) if self.scope is VerifyScope.ALL else [self.scope]

        checks = []
        for scope in selected:
            self.logger.info(f"Running {scope.value} checks")
            for check in families[scope]():
                if not check.passed:
                    self.logger.warning(check.describe())
                checks.append(check)
        return checks

    def _grid(self, default: int) -> GridSpec:
        return GridSpec(self.resolution if self.resolution is not None else default, self.seed)

    def _random_instances(self, count: int, rng: np.random.Generator):
        for _ in range(count):
            model = SourceModel(q_x=rng.uniform(0.01, 0.49), q_s1=rng.uniform(0.01, 0.49))
            yield model, rng.uniform(0.0, 1.0), rng.uniform(binary_entropy(model.q_s1), 1.0)

    def oneshot_checks(self) -> List[VerificationCheck]:
        rng = np.random.default_rng(self.seed)
        checks = []

        levels = np.linspace(0.0, 1.0, 1000)
        round_trip = max(abs(binary_entropy(inverse_binary_entropy(h)) - h) for h in levels)
        checks.append(VerificationCheck("inverse entropy round trip", round_trip, 1e-10))

        dominance, identity = 0.0, 0.0
        for q_x, q_s1 in rng.uniform(0.0, 0.5, size=(10_000, 2)):
            model = SourceModel(q_x, q_s1)
            m = task_prior_m(model)
            dominance = max(dominance, binary_entropy(q_s1) - binary_entropy(m))
            identity = max(identity, abs(abs(m - 0.5) - 2 * abs(q_x - 0.5) * abs(q_s1 - 0.5)))
        checks.append(VerificationCheck("task entropy dominates coupling entropy", dominance, 1e-15))
        checks.append(VerificationCheck("task prior identity", identity, 1e-15))

        rdc_residual = 0.0
        for model, d, c in self._random_instances(500, rng):
            point = OperatingPoint(d, c)
            rdc_residual = max(rdc_residual, abs(oneshot_rdc(model, point).rate - scalar_lp_oracle_rdc(model, point)))
        checks.append(VerificationCheck("one-shot rate vs scalar oracle", rdc_residual, 1e-9))

        drc_residual = 0.0
        for model, r, c in self._random_instances(500, rng):
            closed = _maybe(lambda: oneshot_drc(model, r, c).distortion)
            oracle = _maybe(scalar_lp_oracle_drc, model, r, c)
            if (closed is None) != (oracle is None):
                drc_residual = float("inf")
            elif closed is not None:
                drc_residual = max(drc_residual, abs(closed - oracle))
        checks.append(VerificationCheck("one-shot distortion vs scalar oracle", drc_residual, 1e-9))

        h_m, h_s1 = binary_entropy(task_prior_m(REFERENCE_MODEL)), binary_entropy(REFERENCE_MODEL.q_s1)
        plateau = binary_entropy(0.3) * (h_m - 0.8) / (h_m - h_s1)
        endpoints = max(
            abs(oneshot_rdc(REFERENCE_MODEL, OperatingPoint(0.0, 0.8)).rate - binary_entropy(0.3)),
            abs(oneshot_rdc(REFERENCE_MODEL, OperatingPoint(0.5, 0.8)).rate - plateau),
            abs(rdc_breakpoint(REFERENCE_MODEL, 0.8) - 0.09919606),
        )
        checks.append(VerificationCheck("one-shot curve endpoints and breakpoint", endpoints, 1e-6))

        points = [OperatingPoint(d, 0.9) for d in np.linspace(0.0, 1.0, 101)]
        ordering = max(
            asymptotic_rdc(REFERENCE_MODEL, point) - oneshot_rdc(REFERENCE_MODEL, point).rate for point in points
        )
        checks.append(VerificationCheck("asymptotic rate below one-shot rate", max(ordering, 0.0), 1e-12))

        enumeration = 0.0
        grid = self._grid(DEFAULT_RESOLUTION)
        for model, d, c in self._random_instances(20, rng):
            point = OperatingPoint(d / 2, c)
            exact = oneshot_rdc(model, point).rate
            value = four_map_enumeration_oracle(model, point, grid)
            slack = binary_entropy(model.q_x) / (grid.resolution - 1)
            enumeration = max(enumeration, exact - value, value - exact - slack)
        checks.append(VerificationCheck(f"four-map enumeration at resolution {grid.resolution}", enumeration, 1e-12))

        return checks

    def dc_checks(self) -> List[VerificationCheck]:
        grid = self._grid(DC_RESOLUTION)
        budgets = np.linspace(binary_entropy(0.2), 1.0, 21)

        agreement, oracle = 0.0, 0.0
        for c in budgets:
            lp = dc_problem(TWO_SYMBOLS, 0.05, c)
            agreement = max(agreement, abs(float(lp.c @ knapsack_boundary(lp)) - solve_lp(lp).objective))
            exact = dc_lower_boundary(TWO_SYMBOLS, 0.05, c).distortion
            oracle = max(oracle, abs(dc_grid_oracle(TWO_SYMBOLS, 0.05, c, grid) - exact))

        thresholds = np.linspace(0.2, 0.5, 31)
        distortions = np.array([dc_lower_boundary(TWO_SYMBOLS, 0.05, binary_entropy(t)).distortion for t in thresholds])
        shape = max(float(np.max(np.diff(distortions))), float(np.max(-np.diff(distortions, 2))), 0.0)

        endpoints = max(
            abs(dc_lower_boundary(TWO_SYMBOLS, 0.05, 1.0).distortion - 0.2),
            abs(dc_lower_boundary(FOUR_SYMBOLS, 0.1, 1.0).distortion - 0.23),
        )
        return [
            VerificationCheck("simplex vs knapsack", agreement, 1e-9),
            VerificationCheck(f"lower boundary vs grid oracle at resolution {grid.resolution}", oracle, 1e-2),
            VerificationCheck("lower boundary nonincreasing and convex", shape, 1e-8),
            VerificationCheck("lower boundary endpoints", endpoints, 1e-9),
        ]

    def universal_checks(self) -> List[VerificationCheck]:
        rng = np.random.default_rng(self.seed)
        checks = []

        boundary = theta_boundary(UNIVERSAL_MODEL, 0.1)
        theta = max(
            abs(binary_entropy(boundary.b) - binary_entropy(boundary.c0) - 0.1),
            abs(inverse_binary_entropy(boundary.c_min) - (0.05 + 0.9 * boundary.c0)),
        )
        checks.append(VerificationCheck("boundary parameter residuals", theta, 1e-10))

        surrogate = 0.0
        for table, q_x in zip(rng.dirichlet(np.ones(4), size=(10_000, 2)), rng.uniform(0.01, 0.49, size=10_000)):
            pmf = JointDecoderPMF(table.reshape(2, 2, 2))
            surrogate = max(surrogate, i_lb(q_x, pmf) - mutual_information_exact(q_x, pmf))
        checks.append(VerificationCheck("surrogate below mutual information", surrogate, 1e-12))

        settings = UniversalSettings(starts=2, seed=self.seed)
        grid = self._grid(DEFAULT_RESOLUTION)
        for r in UNIVERSAL_RATES:
            boundary = theta_boundary(UNIVERSAL_MODEL, r)
            lower = rate_penalty_lower(UNIVERSAL_MODEL, r, settings)
            upper = rate_penalty_upper(UNIVERSAL_MODEL, r, settings)
            residual = max(
                theta_constraints(UNIVERSAL_MODEL, boundary, RateBound.LOWER).residual(lower.pmf.free),
                theta_constraints(UNIVERSAL_MODEL, boundary, RateBound.UPPER).residual(upper.pmf.free),
            )
            disagreement = max(
                abs(lower.rate - projected_gradient_oracle(UNIVERSAL_MODEL, r, RateBound.LOWER, grid)),
                abs(upper.rate - projected_gradient_oracle(UNIVERSAL_MODEL, r, RateBound.UPPER, grid)),
            )
            certified = lower.status is SolveStatus.OPTIMAL and upper.status is SolveStatus.OPTIMAL
            gap = max(lower.gap, upper.gap) if certified else float("inf")
            checks.append(VerificationCheck(f"bounds certified optimal at r={r:g}", gap, 1e-9))
            checks.append(VerificationCheck(f"bounds ordered at r={r:g}", max(lower.rate - upper.rate, 0.0), 1e-8))
            checks.append(VerificationCheck(f"bound constraint residuals at r={r:g}", residual, 1e-9))
            checks.append(VerificationCheck(f"conditional vs projected gradient at r={r:g}", disagreement, 1e-4))

        return checks
