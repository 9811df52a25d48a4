import io
import json
import logging
from unittest.mock import patch

import numpy as np
import pandas as pd
import pytest

from rdc_app.app import EXIT_SOLVER_FAILED, main
from rdc_app.config import SOLVER_DEFAULTS
from rdc_app.logger import configure_logger
from rdc_app.services.curves import CurveService
from rdc_app.services.emission import EmissionService, render_csv, render_json
from rdc_app.services.sweep import run_sweep
from rdc_kernels.enumerators import SweepKind
from rdc_kernels.errors import ConvergenceError, SolverDisagreementError
from rdc_kernels.oracle import VerificationCheck
from rdc_kernels.sweeps import CurveSweep

REFERENCE_FLAGS = ["--q-x", "0.3", "--q-s1", "0.2", "--c", "0.8"]
UNIVERSAL_FLAGS = ["universal", "--q-x", "0.2", "--q-s1", "0.05", "--starts", "1", "--c-samples", "6"]


@pytest.fixture
def channel_file(tmp_path):
    path = tmp_path / "channel.json"
    path.write_text(json.dumps({"q": [0.5, 0.5], "eps": [0.2, 0.8]}))
    return path


def test_rdc_curve_reproduces_the_reference_curve(tmp_path):
    output = tmp_path / "rdc.csv"

    assert main(["rdc", *REFERENCE_FLAGS, "--samples", "101", "--output", str(output)]) == 0

    frame = pd.read_csv(output)
    assert list(frame.columns) == ["x", "y"]
    assert len(frame) == 101
    assert frame.y.iloc[0] == pytest.approx(0.881291, abs=1e-6)
    assert frame.y.iloc[50] == pytest.approx(0.589889, abs=1e-6)
    assert frame.y.is_monotonic_decreasing


def test_rdc_curve_with_two_samples(capsys):
    assert main(["rdc", *REFERENCE_FLAGS, "--samples", "2"]) == 0

    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "x,y"
    assert len(lines) == 3


def test_workers_and_format_reach_the_services(mocker):
    curve_service = mocker.patch("rdc_app.app.CurveService")
    emission_service = mocker.patch("rdc_app.app.EmissionService")

    assert main(["rdc", *REFERENCE_FLAGS, "--workers", "3", "--format", "json"]) == 0

    assert curve_service.call_args.args[0] == 3
    assert emission_service.call_args.args[:2] == ("json", None)
    curve_service.return_value.rdc_curve.assert_called_once()
    emission_service.return_value.emit.assert_called_once()


def test_rdc_curve_rejects_a_budget_below_the_task_entropy(caplog):
    assert main(["rdc", "--q-x", "0.3", "--q-s1", "0.2", "--c", "0.5"]) == 3

    assert "0.721928" in caplog.text


def test_rdc_asymptotic_mode_lies_below_the_one_shot_curve(tmp_path):
    main(["rdc", *REFERENCE_FLAGS, "--samples", "21", "--output", str(tmp_path / "one.csv")])
    main(["rdc", *REFERENCE_FLAGS, "--samples", "21", "--mode", "asymptotic", "--output", str(tmp_path / "asym.csv")])

    oneshot, asymptotic = pd.read_csv(tmp_path / "one.csv"), pd.read_csv(tmp_path / "asym.csv")
    assert (asymptotic.y <= oneshot.y + 1e-12).all()


def test_drc_sweep_omits_and_counts_infeasible_rates(tmp_path):
    output = tmp_path / "drc.json"

    assert main(["drc", *REFERENCE_FLAGS, "--samples", "11", "--format", "json", "--output", str(output)]) == 0

    document = json.loads(output.read_text())
    ys = [sample["y"] for sample in document["samples"]]
    assert document["meta"] == {"kind": "drc", "infeasible_samples": 6}
    assert len(ys) == 5
    assert all(later <= earlier for earlier, later in zip(ys, ys[1:]))
    assert ys[-1] == 0.0


def test_drc_sweep_over_the_classification_axis(tmp_path):
    output = tmp_path / "drc.csv"

    assert main(["drc", "--q-x", "0.3", "--q-s1", "0.2", "--axis", "c", "--r", "0.0", "--min", "0.9",
                 "--max", "1.0", "--samples", "5", "--output", str(output)]) == 0

    frame = pd.read_csv(output)
    assert list(frame.x) == [0.975, 1.0]
    assert (frame.y == pytest.approx(0.3)).all()


@pytest.mark.parametrize("bounds", [["--min", "0.5", "--max", "0.5"], ["--min", "0.6", "--max", "0.2"]])
def test_drc_rejects_an_empty_range(bounds):
    assert main(["drc", *REFERENCE_FLAGS, *bounds]) == 2


def test_dc_sweep_ends_at_the_map_decoder(channel_file, tmp_path):
    output = tmp_path / "dc.csv"

    assert main(["dc", "--channel", str(channel_file), "--q-s1", "0.05", "--c-min", "0.75", "--samples", "11",
                 "--output", str(output)]) == 0

    frame = pd.read_csv(output)
    assert frame.x.iloc[-1] == 1.0
    assert frame.y.iloc[-1] == pytest.approx(0.2, abs=1e-9)
    assert frame.y.is_monotonic_decreasing


def test_dc_sweep_names_a_missing_channel_field(tmp_path, caplog):
    path = tmp_path / "channel.json"
    path.write_text(json.dumps({"q": [0.5, 0.5]}))

    assert main(["dc", "--channel", str(path), "--q-s1", "0.05"]) == 2
    assert '"eps"' in caplog.text


def test_universal_writes_both_bound_curves(tmp_path):
    output = tmp_path / "universal.csv"

    assert main([*UNIVERSAL_FLAGS, "--r", "0.1", "--output", str(output)]) == 0

    lower = pd.read_csv(tmp_path / "universal_lb.csv").set_index("x")
    upper = pd.read_csv(tmp_path / "universal_ub.csv").set_index("x")
    common = lower.index.intersection(upper.index)
    assert len(common) > 0
    assert (upper.y[common] <= lower.y[common] + 1e-4).all()


def test_universal_accepts_the_top_of_the_interval(tmp_path):
    assert main([*UNIVERSAL_FLAGS, "--r", "0.7219280948873623", "--output", str(tmp_path / "top.csv")]) == 0


@pytest.mark.parametrize("r", [0.05, 0.1, 0.2])
def test_universal_curves_are_certified_on_the_reference_grid(r):
    options = {**SOLVER_DEFAULTS, "starts": 2, "q_x": 0.2, "q_s1": 0.05, "r": r, "c_min": None, "c_max": 1.0,
               "c_samples": 6}

    lower, upper = CurveService(1, logging.getLogger(__name__)).universal_curves(options)

    assert lower.params["gap"] <= 1e-9
    assert upper.params["gap"] <= 1e-9
    assert lower.params["rate_bound"] == pytest.approx(upper.params["rate_bound"], abs=1e-9)


@pytest.mark.parametrize(
    "error", [ConvergenceError("lb solve stopped", best_iterate=np.zeros(6), gap=1e-3),
              SolverDisagreementError("optima differ")]
)
def test_solver_failures_have_their_own_exit_code(mocker, caplog, error):
    mocker.patch("rdc_app.services.curves.rate_penalty_lower", side_effect=error)

    assert main([*UNIVERSAL_FLAGS, "--r", "0.1"]) == EXIT_SOLVER_FAILED
    assert str(error) in caplog.text


@pytest.mark.parametrize("r, code", [("-0.1", 2), ("0.8", 3), ("0", 3)])
def test_universal_rejects_rates_outside_the_interval(r, code):
    assert main([*UNIVERSAL_FLAGS, "--r", r]) == code


def test_rerunning_commands_is_byte_identical(tmp_path):
    for name in ("first", "second"):
        main(["rdc", *REFERENCE_FLAGS, "--samples", "33", "--workers", "4", "--output", str(tmp_path / f"{name}.csv")])
        main([*UNIVERSAL_FLAGS, "--r", "0.1", "--format", "json", "--output", str(tmp_path / f"{name}.json")])

    assert (tmp_path / "first.csv").read_bytes() == (tmp_path / "second.csv").read_bytes()
    assert (tmp_path / "first_lb.json").read_bytes() == (tmp_path / "second_lb.json").read_bytes()
    assert (tmp_path / "first_ub.json").read_bytes() == (tmp_path / "second_ub.json").read_bytes()


def test_config_file_fills_missing_flags(tmp_path):
    config = tmp_path / "rdc.toml"
    config.write_text("[rdc]\nq_x = 0.3\nq_s1 = 0.2\nc = 0.8\nsamples = 3\n")

    assert main(["rdc", "--config", str(config), "--output", str(tmp_path / "config.csv")]) == 0
    assert len(pd.read_csv(tmp_path / "config.csv")) == 3

    assert main(["rdc", "--config", str(config), "--samples", "5", "--output", str(tmp_path / "flag.csv")]) == 0
    assert len(pd.read_csv(tmp_path / "flag.csv")) == 5


@pytest.mark.parametrize(
    "content", ["[rdc]\nq_x = 0.3\nwidth = 2\n", "[plots]\nq_x = 0.3\n", "[rdc]\nsamples = 'many'\n"]
)
def test_bad_config_files_are_invalid_input(tmp_path, content):
    config = tmp_path / "bad.toml"
    config.write_text(content)

    assert main(["rdc", *REFERENCE_FLAGS, "--config", str(config)]) == 2


def test_missing_required_options_are_invalid_input(caplog):
    assert main(["rdc", "--q-x", "0.3"]) == 2
    assert "--q-s1" in caplog.text


def test_output_directory_variable_prefixes_relative_paths(tmp_path, monkeypatch):
    monkeypatch.setenv("RDC_OUTPUT_DIR", str(tmp_path / "curves"))
    monkeypatch.chdir(tmp_path)

    assert main(["rdc", *REFERENCE_FLAGS, "--samples", "3", "--output", "curve.csv"]) == 0
    assert (tmp_path / "curves" / "curve.csv").exists()


def test_bogus_scope_is_invalid_input():
    assert main(["verify", "--scope", "everything"]) == 2


@patch("rdc_app.app.VerificationService")
def test_verify_exit_code_follows_the_checks(mock_service, capsys):
    mock_service.return_value.run.return_value = [VerificationCheck("fine", 0.0, 1e-9)]
    assert main(["verify", "--scope", "dc"]) == 0

    mock_service.return_value.run.return_value = [VerificationCheck("broken", 1.0, 1e-9)]
    assert main(["verify"]) == 1
    assert "FAIL broken" in capsys.readouterr().out


def test_verify_runs_the_one_shot_suite(capsys):
    assert main(["verify", "--scope", "oneshot", "--resolution", "101"]) == 0
    assert "0 failed" in capsys.readouterr().out


def test_dc_verification_defaults_to_201_points(capsys):
    assert main(["verify", "--scope", "dc"]) == 0

    out = capsys.readouterr().out
    assert "PASS lower boundary vs grid oracle at resolution 201" in out
    assert "0 failed" in out


def test_csv_and_json_carry_the_same_numbers():
    sweep = CurveSweep(kind=SweepKind.RDC, params={"c": 0.8}, samples=((0.1, 1 / 3), (0.2, 2 / 7)))

    from_csv = pd.read_csv(io.StringIO(render_csv(sweep)), float_precision="round_trip")
    from_json = json.loads(render_json(sweep))["samples"]
    assert list(from_csv.y) == [sample["y"] for sample in from_json]
    assert render_csv(sweep).splitlines()[1] == "0.1,0.333333333333333"


def test_stdout_emission_separates_sweeps(capsys):
    logger = logging.getLogger(__name__)
    lower = CurveSweep(kind=SweepKind.UNIVERSAL_LB, params={}, samples=((0.7, 0.1),))
    upper = CurveSweep(kind=SweepKind.UNIVERSAL_UB, params={}, samples=((0.7, 0.05),))

    EmissionService("csv", None, logger).emit([("lb", lower), ("ub", upper)])

    assert capsys.readouterr().out == "x,y\n0.7,0.1\n\nx,y\n0.7,0.05\n"


def test_sweep_workers_preserve_order_and_notes():
    logger = logging.getLogger(__name__)
    xs = [i / 10 for i in range(20)]

    assert run_sweep(xs, lambda x: x * x, 4, logger) == run_sweep(xs, lambda x: x * x, 1, logger)

    def failing(x):
        if x > 1.0:
            raise ZeroDivisionError("boom")
        return x

    with pytest.raises(ZeroDivisionError) as error:
        run_sweep(xs, failing, 3, logger)
    assert "sample 11" in error.value.__notes__[0]


def test_configure_logger_replaces_its_own_handlers(tmp_path):
    configure_logger("INFO")
    logger = configure_logger("DEBUG", str(tmp_path / "run.log"))

    names = [handler.get_name() for handler in logger.handlers if (handler.get_name() or "").startswith("rdc_app.")]
    assert sorted(names) == ["rdc_app.console", "rdc_app.file"]
    assert logger.level == logging.DEBUG
    configure_logger()
