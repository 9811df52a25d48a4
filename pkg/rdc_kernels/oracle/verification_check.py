"""
VerificationCheck is one line of a verification report.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class VerificationCheck:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def describe(self) -> str:
        verdict = 'PASS' if self.passed else 'FAIL'

        return f'{verdict} {self.name}: residual {self.residual:.3e} (tolerance {self.tolerance:.1e})'
