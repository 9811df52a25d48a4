import json
import logging
from pathlib import Path
from typing import Optional, Sequence, Tuple

import pandas as pd

from rdc_app.config import output_path
from rdc_kernels.sweeps import CurveSweep

FLOAT_FORMAT = "%.15g"


def sweep_frame(sweep: CurveSweep) -> pd.DataFrame:
    return pd.DataFrame(list(sweep.samples), columns=["x", "y"], dtype=float)


def _rounded(value):
    if isinstance(value, float):
        return float(FLOAT_FORMAT % value)
    if isinstance(value, (list, tuple)):
        return [_rounded(item) for item in value]
    return value


def render_csv(sweep: CurveSweep) -> str:
    return sweep_frame(sweep).to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def render_json(sweep: CurveSweep) -> str:
    records = sweep_frame(sweep).to_dict("records")
    document = {
        "params": {key: _rounded(value) for key, value in sweep.params.items()},
        "meta": {"kind": sweep.kind.value, "infeasible_samples": sweep.infeasible_samples},
        "samples": [{key: _rounded(value) for key, value in row.items()} for row in records],
    }
    return json.dumps(document, indent=2) + "\n"


def render(sweep: CurveSweep, fmt: str) -> str:
    return render_json(sweep) if fmt == "json" else render_csv(sweep)


class EmissionService:
    def __init__(self, fmt: str, output: Optional[str], logger: logging.Logger):
        self.fmt = fmt
        self.output = output
        self.logger = logger

    def target(self, tag: Optional[str]) -> Optional[Path]:
        """Output file for a tagged sweep: <stem>_<tag><suffix> next to the requested output"""
        if self.output is None:
            return None
        path = output_path(self.output)
        if tag is None:
            return path
        return path.with_name(f"{path.stem}_{tag}{path.suffix}")

    def emit(self, sweeps: Sequence[Tuple[Optional[str], CurveSweep]]) -> None:
        texts = []
        for tag, sweep in sweeps:
            text = render(sweep, self.fmt)
            path = self.target(tag)
            if path is None:
                texts.append(text)
                continue
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            self.logger.info(f"Wrote {len(sweep.samples)} {sweep.kind.value} samples to {path}")
        if texts:
            print("\n".join(texts), end="")
