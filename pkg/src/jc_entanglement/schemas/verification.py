"""Pydantic schemas for analytic-versus-oracle check results."""

import math

from pydantic import BaseModel, ConfigDict, Field


class CheckResult(BaseModel):
    """Worst deviation found by one named check."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Check identifier")
    deviation: float = Field(description="Largest deviation observed (inf when the check errored)")
    tolerance: float = Field(gt=0, description="Largest acceptable deviation")
    detail: str = Field(default="", description="Error message or extra context")

    @property
    def passed(self) -> bool:
        return math.isfinite(self.deviation) and self.deviation <= self.tolerance

    def summary(self) -> str:
        """One line for the verification printout."""
        status = "ok  " if self.passed else "FAIL"
        line = f"{status} {self.name:<28} max deviation {self.deviation:.3e} (tolerance {self.tolerance:.1e})"
        return f"{line}  {self.detail}" if self.detail else line


class VerificationReport(BaseModel):
    """All checks of one verification run."""

    model_config = ConfigDict(frozen=True)

    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[str]:
        """Names of the checks that exceeded their tolerance."""
        return [check.name for check in self.checks if not check.passed]
