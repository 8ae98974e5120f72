"""The uniform record every bound check produces."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
REPORT_ONLY = "report-only"


@dataclass(frozen=True)
class BoundCheck:
    """lhs measured against ``gate * rhs``; ``rhs`` already carries any p^slack factor."""

    name: str
    lhs: float
    rhs: float
    ratio: float
    slack_exponent: float
    gate_constant: float
    verdict: str
    p: int = 0
    params: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL


def ratio_of(lhs, rhs) -> float:
    if rhs > 0:
        return float(lhs) / float(rhs)
    if lhs == 0:
        return 0.0
    return math.inf


def make_check(
    name: str,
    lhs,
    rhs,
    *,
    p: int = 0,
    slack: float = 0.0,
    gate: float = 1.0,
    report_only: bool = False,
    verdict: str | None = None,
    **params,
) -> BoundCheck:
    """Build a check; ``rhs`` must not include the p^slack factor, it is applied here."""
    scaled = float(rhs) * (p**slack if slack and p else 1.0)
    if verdict is None:
        holds = float(lhs) <= gate * scaled
        if report_only:
            verdict = REPORT_ONLY
            if not holds:
                params.setdefault("exceeds_gate", 1)
        else:
            verdict = PASS if holds else FAIL
    return BoundCheck(
        name=name,
        lhs=float(lhs),
        rhs=scaled,
        ratio=ratio_of(lhs, scaled),
        slack_exponent=float(slack),
        gate_constant=float(gate),
        verdict=verdict,
        p=int(p),
        params=params,
    )
