import logging
from typing import Tuple

import numpy as np

from rdc_app.services.sweep import run_sweep
from rdc_kernels.binary_info import ROUND_OFF_SLACK, SourceModel, binary_entropy, require_feasible
from rdc_kernels.dc_region import RepresentationChannel, dc_lower_boundary
from rdc_kernels.enumerators import StepRule, SweepKind
from rdc_kernels.errors import DomainError, InfeasibleProblemError
from rdc_kernels.oneshot import OperatingPoint, asymptotic_b, asymptotic_drc, asymptotic_rdc, oneshot_drc, oneshot_rdc
from rdc_kernels.sweeps import CurveSweep
from rdc_kernels.universal import UniversalSettings, rate_penalty_lower, rate_penalty_upper


def sample_grid(low: float, high: float, samples: int) -> np.ndarray:
    if samples < 2:
        raise DomainError(f"a sweep needs at least 2 samples, got {samples}")
    if not low < high:
        raise DomainError(f"sweep range must satisfy min < max, got [{low}, {high}]")
    return np.linspace(low, high, samples)


class CurveService:
    def __init__(self, workers: int, logger: logging.Logger):
        self.workers = workers
        self.logger = logger

    def _sweep(self, kind: SweepKind, params: dict, xs, evaluate) -> CurveSweep:
        self.logger.info(f"Sweeping {kind.value} over {len(xs)} samples with {self.workers} worker(s)")
        samples, infeasible = run_sweep([float(x) for x in xs], evaluate, self.workers, self.logger)
        return CurveSweep(kind=kind, params=params, samples=tuple(samples), infeasible_samples=infeasible)

    def rdc_curve(self, options: dict) -> CurveSweep:
        model = SourceModel(options["q_x"], options["q_s1"])
        c = options["c"]
        require_feasible(model, c)
        rate = oneshot_rdc if options["mode"] == "oneshot" else asymptotic_rdc

        def evaluate(d: float) -> float:
            value = rate(model, OperatingPoint(d, c))
            return value.rate if options["mode"] == "oneshot" else value

        grid = sample_grid(options["d_min"], options["d_max"], options["samples"])
        params = {"q_x": model.q_x, "q_s1": model.q_s1, "c": c, "mode": options["mode"]}
        return self._sweep(SweepKind.RDC, params, grid, evaluate)

    def drc_curve(self, options: dict) -> CurveSweep:
        model = SourceModel(options["q_x"], options["q_s1"])
        axis, mode = options["axis"], options["mode"]
        fixed = options["c"] if axis == "r" else options["r"]
        if axis == "r":
            require_feasible(model, fixed)
        elif fixed < 0:
            raise DomainError(f"rate budget r={fixed!r} must be nonnegative")

        def distortion(r: float, c: float) -> float:
            if mode == "oneshot":
                return oneshot_drc(model, r, c).distortion
            return asymptotic_drc(model, r, c)

        def evaluate(x: float) -> float:
            return distortion(x, fixed) if axis == "r" else distortion(fixed, x)

        grid = sample_grid(options["min"], options["max"], options["samples"])
        params = {"q_x": model.q_x, "q_s1": model.q_s1, "axis": axis, "c" if axis == "r" else "r": fixed, "mode": mode}
        return self._sweep(SweepKind.DRC, params, grid, evaluate)

    def dc_curve(self, options: dict) -> CurveSweep:
        channel = RepresentationChannel.from_json(options["channel"])
        q_s1 = options["q_s1"]
        c_min = options["c_min"] if options["c_min"] is not None else binary_entropy(q_s1)

        def evaluate(c: float) -> float:
            return dc_lower_boundary(channel, q_s1, c).distortion

        params = {"q": list(channel.q), "eps": list(channel.eps), "q_s1": q_s1}
        return self._sweep(SweepKind.DC, params, sample_grid(c_min, options["c_max"], options["samples"]), evaluate)

    def universal_curves(self, options: dict) -> Tuple[CurveSweep, CurveSweep]:
        model = SourceModel(options["q_x"], options["q_s1"])
        r = options["r"]
        if r < 0:
            raise DomainError(f"rate level r={r!r} must be nonnegative")
        ceiling = binary_entropy(asymptotic_b(model))
        if not 0 < r <= ceiling + ROUND_OFF_SLACK:
            raise InfeasibleProblemError(f"rate level r={r!r} is outside (0, {ceiling:.6f}]", certificate=r - ceiling)

        settings = UniversalSettings(
            starts=options["starts"],
            seed=options["seed"],
            max_iterations=options["max_iterations"],
            gap_tolerance=options["gap_tolerance"],
            step_rule=StepRule(options["step_rule"]),
            literal_upper_constraint=options["literal_upper"],
        )
        lower = rate_penalty_lower(model, r, settings)
        upper = rate_penalty_upper(model, r, settings)
        self.logger.info(f"Universal bounds at r={r:g}: [{lower.rate:.9f}, {upper.rate:.9f}]")

        c_min = options["c_min"] if options["c_min"] is not None else binary_entropy(model.q_s1)
        grid = sample_grid(c_min, options["c_max"], options["c_samples"])
        sweeps = []
        for kind, solution in ((SweepKind.UNIVERSAL_LB, lower), (SweepKind.UNIVERSAL_UB, upper)):
            params = {
                "q_x": model.q_x,
                "q_s1": model.q_s1,
                "r": r,
                "rate_bound": solution.rate,
                "penalty": solution.rate - r,
                "gap": solution.gap,
                "exact_information": solution.exact_information,
            }
            sweeps.append(self._sweep(kind, params, grid, lambda c, rate=solution.rate: asymptotic_drc(model, rate, c)))
        return sweeps[0], sweeps[1]
