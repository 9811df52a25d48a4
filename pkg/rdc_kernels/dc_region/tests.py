import json

import numpy as np
import pytest

from rdc_kernels.binary_info import binary_entropy, inverse_binary_entropy
from rdc_kernels.dc_region import DecoderProfile, RepresentationChannel, classification_crossover, \
    dc_boundary_curve, dc_lower_boundary, dc_problem, decoder_box, knapsack_boundary, map_decoder_distortion
from rdc_kernels.enumerators import SweepKind
from rdc_kernels.errors import ChannelValidationError, DegenerateModelError, DomainError, \
    InfeasibleClassificationError, InfeasibleProblemError
from rdc_kernels.solver import solve_lp

TWO_SYMBOLS = RepresentationChannel(q=(0.5, 0.5), eps=(0.2, 0.8))
FOUR_SYMBOLS = RepresentationChannel(q=(0.2, 0.3, 0.1, 0.4), eps=(0.15, 0.35, 0.65, 0.85))


def test_two_symbol_channel_at_maximal_budget():
    distortion, profile = dc_lower_boundary(TWO_SYMBOLS, 0.05, 1.0)

    assert distortion == pytest.approx(0.2, abs=1e-9)
    assert profile.p == pytest.approx((1.0, 0.0), abs=1e-12)
    assert classification_crossover(TWO_SYMBOLS, profile) == pytest.approx(0.2)


def test_maximal_budget_reaches_the_map_decoder():
    assert map_decoder_distortion(FOUR_SYMBOLS) == pytest.approx(0.23)
    assert dc_lower_boundary(FOUR_SYMBOLS, 0.1, 1.0).distortion == pytest.approx(0.23, abs=1e-9)


def test_decoder_box_closes_the_half_open_interval_and_assigns_the_midpoint():
    lower, upper = decoder_box(RepresentationChannel(q=(0.25, 0.25, 0.5), eps=(0.2, 0.5, 0.9)))

    assert lower == pytest.approx([0.8, 0.5, 0.0])
    assert upper == pytest.approx([1.0, 1.0, 0.1])


def test_dc_problem_is_the_two_symbol_linear_program():
    lp = dc_problem(TWO_SYMBOLS, 0.05, 1.0)

    assert lp.c == pytest.approx([-0.3, 0.3])
    assert lp.a[0] == pytest.approx([0.09, 0.36])
    assert lp.b[0] == pytest.approx(0.225)
    assert solve_lp(lp).objective + 0.5 == pytest.approx(0.2, abs=1e-12)


@pytest.mark.parametrize('c', np.linspace(binary_entropy(0.2), 1.0, 21))
def test_simplex_and_knapsack_agree_on_the_two_symbol_sweep(c):
    lp = dc_problem(TWO_SYMBOLS, 0.05, c)
    greedy = float(lp.c @ knapsack_boundary(lp))

    assert greedy == pytest.approx(solve_lp(lp).objective, abs=1e-9)


def test_two_symbol_boundary_is_nonincreasing():
    budgets = np.linspace(binary_entropy(0.2), 1.0, 21)
    curve = dc_boundary_curve(TWO_SYMBOLS, 0.05, budgets)

    assert curve.kind is SweepKind.DC
    assert all(later <= earlier + 1e-12 for earlier, later in zip(curve.ys, curve.ys[1:]))
    assert curve.ys[-1] == pytest.approx(0.2, abs=1e-9)


def test_four_symbol_boundary_is_convex_in_the_crossover_threshold():
    thresholds = np.linspace(0.24, 0.5, 21)
    curve = dc_boundary_curve(FOUR_SYMBOLS, 0.1, [binary_entropy(t) for t in thresholds])
    distortions = np.asarray(curve.ys)

    assert np.all(np.diff(distortions) <= 1e-12)
    assert np.all(np.diff(distortions, 2) >= -1e-8)
    assert distortions[-1] == pytest.approx(0.23, abs=1e-9)


def test_classification_row_is_tight_whenever_it_costs_distortion():
    for t in np.linspace(0.24, 0.5, 27):
        c = binary_entropy(t)
        distortion, profile = dc_lower_boundary(FOUR_SYMBOLS, 0.1, c)
        lp = dc_problem(FOUR_SYMBOLS, 0.1, c)
        if distortion > map_decoder_distortion(FOUR_SYMBOLS) + 1e-9:
            assert float(lp.a[0] @ profile.array) == pytest.approx(lp.b[0], abs=1e-9)


def test_boundary_is_monotone_in_the_budget():
    low = dc_lower_boundary(FOUR_SYMBOLS, 0.1, binary_entropy(0.25)).distortion
    high = dc_lower_boundary(FOUR_SYMBOLS, 0.1, binary_entropy(0.28)).distortion

    assert low >= high


def test_infeasible_budget_reports_a_certificate():
    with pytest.raises(InfeasibleProblemError) as error:
        dc_lower_boundary(TWO_SYMBOLS, 0.05, binary_entropy(0.1))

    assert error.value.certificate > 0


def test_budget_below_the_task_entropy_is_rejected():
    with pytest.raises(InfeasibleClassificationError):
        dc_lower_boundary(TWO_SYMBOLS, 0.2, 0.5)


def test_degenerate_task_coupling_is_rejected():
    with pytest.raises(DegenerateModelError):
        dc_lower_boundary(TWO_SYMBOLS, 0.5, 1.0)


def test_knapsack_spends_capacity_on_the_best_ratio_first():
    lp = dc_problem(FOUR_SYMBOLS, 0.1, binary_entropy(0.27))
    x = knapsack_boundary(lp)

    assert x[2] == 0.0 and x[3] == 0.0
    assert x[0] == pytest.approx(1.0)
    assert 0.65 <= x[1] < 1.0
    assert float(lp.a[0] @ x) == pytest.approx(lp.b[0], abs=1e-12)


def test_boundary_curve_edge_cases():
    assert dc_boundary_curve(TWO_SYMBOLS, 0.05, []).samples == ()
    curve = dc_boundary_curve(TWO_SYMBOLS, 0.05, [0.75, 1.0])
    assert curve.samples[-1][1] == pytest.approx(dc_lower_boundary(TWO_SYMBOLS, 0.05, 1.0).distortion)
    with pytest.raises(DomainError):
        dc_boundary_curve(TWO_SYMBOLS, 0.05, [1.0, 0.8])


def test_boundary_curve_omits_and_counts_infeasible_budgets():
    curve = dc_boundary_curve(TWO_SYMBOLS, 0.05, [binary_entropy(0.06), 0.9, 1.0])

    assert curve.infeasible_samples == 1
    assert [c for c, _ in curve.samples] == [0.9, 1.0]


def test_boundary_curve_notes_the_failing_sample():
    with pytest.raises(DegenerateModelError) as error:
        dc_boundary_curve(TWO_SYMBOLS, 0.5, [0.9, 1.0])

    assert any('sample 0' in note for note in error.value.__notes__)


def test_channel_validation():
    with pytest.raises(ChannelValidationError, match='eps'):
        RepresentationChannel.from_mapping({'q': [1.0]})
    with pytest.raises(ChannelValidationError, match='lengths'):
        RepresentationChannel(q=(0.5, 0.5), eps=(0.1,))
    with pytest.raises(ChannelValidationError, match='sums'):
        RepresentationChannel(q=(0.5, 0.6), eps=(0.1, 0.2))
    with pytest.raises(ChannelValidationError, match=r'"q"\[1\]'):
        RepresentationChannel.from_mapping({'q': [0.5, 'x'], 'eps': [0.1, 0.2]})


def test_channel_reads_json_files(tmp_path):
    path = tmp_path / 'channel.json'
    path.write_text(json.dumps({'q': [0.5, 0.5], 'eps': [0.2, 0.8]}))
    assert RepresentationChannel.from_json(path) == TWO_SYMBOLS

    path.write_text('{"q": [0.5, 0.5],\n "eps": [0.2, }')
    with pytest.raises(ChannelValidationError, match='line 2'):
        RepresentationChannel.from_json(path)


def test_crossover_threshold_round_trip_matches_the_row():
    profile = DecoderProfile((0.9, 0.1))
    crossover = classification_crossover(TWO_SYMBOLS, profile)
    assert crossover == pytest.approx((0.5 * 0.2 * 0.9 + 0.5 * 0.8 * 0.1) / 0.5)
    assert inverse_binary_entropy(binary_entropy(crossover)) == pytest.approx(crossover, abs=1e-11)


@pytest.mark.parametrize('p, channel', [
    ((1.2, 0.1), None),
    ((float('nan'), 0.1), None),
    ((0.5, 0.1), TWO_SYMBOLS),
    ((0.9, 0.3), TWO_SYMBOLS),
    ((0.9,), TWO_SYMBOLS),
])
def test_decoder_profile_stays_in_the_decoder_box(p, channel):
    with pytest.raises(DomainError):
        DecoderProfile(p, channel)


def test_boundary_decoder_carries_its_channel():
    profile = dc_lower_boundary(FOUR_SYMBOLS, 0.1, 0.9).profile
    lower, upper = decoder_box(FOUR_SYMBOLS)

    assert profile.channel is FOUR_SYMBOLS
    assert np.all(lower <= profile.array) and np.all(profile.array <= upper)
    assert DecoderProfile((0.8, 0.2), TWO_SYMBOLS).p == (0.8, 0.2)
