import math

import numpy as np
import pytest

from rdc_kernels.binary_info import SourceModel, binary_entropy
from rdc_kernels.dc_region import RepresentationChannel, dc_lower_boundary
from rdc_kernels.enumerators import RateBound
from rdc_kernels.errors import DomainError, GridConfigurationError, InfeasibleProblemError
from rdc_kernels.oneshot import OperatingPoint, oneshot_drc, oneshot_rdc
from rdc_kernels.oracle import GridSpec, VerificationCheck, dc_grid_oracle, four_map_enumeration_oracle, \
    projected_gradient_oracle, scalar_lp_oracle_drc, scalar_lp_oracle_rdc
from rdc_kernels.universal import UniversalSettings, rate_penalty_lower, rate_penalty_upper

REFERENCE_MODEL = SourceModel(q_x=0.3, q_s1=0.2)
TWO_SYMBOLS = RepresentationChannel(q=(0.5, 0.5), eps=(0.2, 0.8))
FOUR_SYMBOLS = RepresentationChannel(q=(0.2, 0.3, 0.1, 0.4), eps=(0.15, 0.35, 0.65, 0.85))


def random_instances(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        model = SourceModel(q_x=rng.uniform(0.01, 0.49), q_s1=rng.uniform(0.01, 0.49))
        yield model, rng.uniform(0.0, 1.0), rng.uniform(binary_entropy(model.q_s1), 1.0)


def outcome(function, *args):
    try:
        return function(*args)
    except InfeasibleProblemError:
        return None


def test_scalar_rdc_oracle_examples():
    plateau = binary_entropy(0.3) * (binary_entropy(0.62) - 0.8) / (binary_entropy(0.62) - binary_entropy(0.2))

    assert scalar_lp_oracle_rdc(REFERENCE_MODEL, OperatingPoint(0.5, 0.8)) == pytest.approx(plateau, abs=1e-12)
    assert scalar_lp_oracle_rdc(REFERENCE_MODEL, OperatingPoint(0.5, 0.8)) == pytest.approx(0.589889, abs=1e-6)
    assert scalar_lp_oracle_rdc(REFERENCE_MODEL, OperatingPoint(0.3, 0.96)) == 0.0
    assert scalar_lp_oracle_rdc(REFERENCE_MODEL, OperatingPoint(0.0, 0.9)) == pytest.approx(binary_entropy(0.3))


def test_scalar_drc_oracle_examples():
    assert scalar_lp_oracle_drc(REFERENCE_MODEL, 0.9, binary_entropy(0.38)) == 0.0
    assert scalar_lp_oracle_drc(REFERENCE_MODEL, 0.0, 0.96) == pytest.approx(0.3)
    with pytest.raises(InfeasibleProblemError):
        scalar_lp_oracle_drc(REFERENCE_MODEL, 0.4, 0.8)


def test_scalar_oracles_reject_budgets_below_the_task_entropy():
    with pytest.raises(InfeasibleProblemError):
        scalar_lp_oracle_rdc(REFERENCE_MODEL, OperatingPoint(0.1, 0.7))
    with pytest.raises(InfeasibleProblemError):
        scalar_lp_oracle_drc(REFERENCE_MODEL, 0.5, 0.7)


def test_closed_form_rdc_matches_the_scalar_oracle():
    for model, d, c in random_instances(500, seed=1):
        point = OperatingPoint(d, c)
        assert abs(oneshot_rdc(model, point).rate - scalar_lp_oracle_rdc(model, point)) <= 1e-9


def test_closed_form_drc_matches_the_scalar_oracle():
    rng = np.random.default_rng(2)
    for model, _, c in random_instances(500, seed=3):
        r = rng.uniform(0.0, 1.0)
        closed = outcome(lambda: oneshot_drc(model, r, c).distortion)
        oracle = outcome(scalar_lp_oracle_drc, model, r, c)
        if closed is None or oracle is None:
            assert closed is None and oracle is None
        else:
            assert abs(closed - oracle) <= 1e-9


def test_four_map_enumeration_refines_monotonically_onto_the_closed_form():
    for model, d, c in random_instances(20, seed=5):
        point = OperatingPoint(d / 2, c)
        exact = oneshot_rdc(model, point).rate
        ladder = [four_map_enumeration_oracle(model, point, GridSpec(resolution)) for resolution in (11, 101, 1001)]

        assert all(value >= exact - 1e-12 for value in ladder)
        assert ladder[0] >= ladder[1] >= ladder[2]
        assert ladder[2] - exact <= 2e-3


def test_four_map_enumeration_on_the_reference_parameters():
    for d in (0.0, 0.05, 0.2, 0.5):
        point = OperatingPoint(d, 0.8)
        value = four_map_enumeration_oracle(REFERENCE_MODEL, point, GridSpec(101))
        assert value == pytest.approx(oneshot_rdc(REFERENCE_MODEL, point).rate, abs=2e-2)

    assert four_map_enumeration_oracle(REFERENCE_MODEL, OperatingPoint(1.0, 1.0), GridSpec(11)) == 0.0


def test_four_map_enumeration_reports_an_empty_grid():
    with pytest.raises(InfeasibleProblemError):
        four_map_enumeration_oracle(REFERENCE_MODEL, OperatingPoint(0.0, 0.5), GridSpec(11))


def test_dc_grid_oracle_tracks_the_linear_program():
    for c in np.linspace(binary_entropy(0.2), 1.0, 21):
        exact = dc_lower_boundary(TWO_SYMBOLS, 0.05, c).distortion
        value = dc_grid_oracle(TWO_SYMBOLS, 0.05, c, GridSpec(201))
        assert exact - 1e-12 <= value <= exact + 1e-2

    assert dc_grid_oracle(TWO_SYMBOLS, 0.05, 1.0, GridSpec(201)) == pytest.approx(0.2, abs=5e-3)


def test_dc_grid_oracle_hits_the_map_decoder_on_box_corners():
    assert dc_grid_oracle(FOUR_SYMBOLS, 0.1, 1.0, GridSpec(11)) == pytest.approx(0.23, abs=1e-12)


def test_dc_grid_oracle_on_four_symbols():
    c = binary_entropy(0.27)
    exact = dc_lower_boundary(FOUR_SYMBOLS, 0.1, c).distortion

    assert exact - 1e-12 <= dc_grid_oracle(FOUR_SYMBOLS, 0.1, c, GridSpec(21)) <= exact + 1e-2


def test_dc_grid_oracle_samples_large_grids_deterministically():
    c = binary_entropy(0.27)
    exact = dc_lower_boundary(FOUR_SYMBOLS, 0.1, c).distortion
    sampled = dc_grid_oracle(FOUR_SYMBOLS, 0.1, c, GridSpec(50, seed=3))

    assert exact - 1e-12 <= sampled <= exact + 3e-2
    assert sampled == dc_grid_oracle(FOUR_SYMBOLS, 0.1, c, GridSpec(50, seed=3))


def test_dc_grid_oracle_guards_the_dimension():
    channel = RepresentationChannel(q=(1 / 6,) * 6, eps=(0.1, 0.2, 0.3, 0.7, 0.8, 0.9))

    with pytest.raises(GridConfigurationError):
        dc_grid_oracle(channel, 0.05, 1.0, GridSpec(2))


def test_grid_spec_validation():
    with pytest.raises(GridConfigurationError):
        GridSpec(1)
    with pytest.raises(GridConfigurationError):
        GridSpec(2.5)


UNIVERSAL_MODEL = SourceModel(q_x=0.2, q_s1=0.05)


@pytest.mark.parametrize('r', [0.05, 0.1, 0.2])
def test_projected_gradient_agrees_with_conditional_gradient(r):
    settings = UniversalSettings(starts=2)
    grid = GridSpec(21)

    lower = projected_gradient_oracle(UNIVERSAL_MODEL, r, RateBound.LOWER, grid)
    upper = projected_gradient_oracle(UNIVERSAL_MODEL, r, RateBound.UPPER, grid)

    assert lower == pytest.approx(rate_penalty_lower(UNIVERSAL_MODEL, r, settings).rate, abs=1e-4)
    assert upper == pytest.approx(rate_penalty_upper(UNIVERSAL_MODEL, r, settings).rate, abs=1e-4)
    assert upper >= lower - 1e-8


def test_projected_gradient_at_the_top_of_the_interval():
    value = projected_gradient_oracle(UNIVERSAL_MODEL, binary_entropy(0.2), RateBound.LOWER, GridSpec(11))

    assert value == pytest.approx(-0.8 * math.log2(0.8), abs=1e-5)


def test_projected_gradient_rejects_rates_outside_the_interval():
    with pytest.raises(DomainError):
        projected_gradient_oracle(UNIVERSAL_MODEL, 0.0, RateBound.LOWER, GridSpec(11))


def test_verification_check_verdicts():
    assert VerificationCheck('ok', 1e-12, 1e-9).passed
    assert not VerificationCheck('bad', 1e-3, 1e-9).passed
    assert VerificationCheck('bad', 1e-3, 1e-9).describe().startswith('FAIL bad')
