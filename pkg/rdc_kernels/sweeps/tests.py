import math

import pytest

from rdc_kernels.enumerators import SweepKind
from rdc_kernels.errors import DomainError
from rdc_kernels.sweeps import CurveSweep


def test_sweep_exposes_its_axes():
    sweep = CurveSweep(kind=SweepKind.DRC, params={'c': 0.8}, samples=((0, 1), (0.5, 0.25)), infeasible_samples=2)

    assert sweep.xs == (0.0, 0.5)
    assert sweep.ys == (1.0, 0.25)
    assert sweep.infeasible_samples == 2


@pytest.mark.parametrize('samples', [((0.5, 1.0), (0.5, 2.0)), ((0.6, 1.0), (0.5, 2.0)), ((0.1, math.nan),),
                                     ((math.inf, 0.0),)])
def test_sweep_rejects_unordered_or_non_finite_samples(samples):
    with pytest.raises(DomainError):
        CurveSweep(kind=SweepKind.RDC, params={}, samples=samples)


def test_sweep_rejects_a_negative_infeasible_count():
    with pytest.raises(DomainError):
        CurveSweep(kind=SweepKind.DC, params={}, infeasible_samples=-1)
