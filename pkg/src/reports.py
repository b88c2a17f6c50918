"""
Verification report data.

Failing identities are recorded as cases, never raised. A case is one of
pass, fail or derived-override; derived-override marks a printed formula that
disagrees with the derived one and never counts as a failure.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
OVERRIDE = "derived-override"

STATUSES = (PASS, FAIL, OVERRIDE)


def conventions(star_variant: str = "factorial") -> Dict[str, str]:
    """Convention ledger embedded in every report"""
    return {
        "poisson_sign": "{f,g} = d_p f d_q g - d_q f d_p g (affC: + for (p1,q1), - for (p2,q2))",
        "star_coefficient": "1/r!" if star_variant == "factorial" else "1/r (compatibility variant)",
        "star_expansion": "u*v + sum_r c_r (h/2i)^r P^r(u,v)",
        "fourier_kernel": "(1/2pi) int exp(-i p eta) u(p) dp; affC: (1/2pi) int exp(-i Re(xi conj z)) dp1 dp2",
        "sl2_coordinates": "basis (X,H,Y); x = F_X/2, h = F_H/2, y = -F_Y/2",
        "sl2_chart": "x = p cos q - lam sin q, h = p sin q + lam cos q, y = p",
        "affR_chart": "upper (p, e^q), lower (p, -e^q)",
        "affC_chart": "F = p1 X1* - p2 X2* + e^q1 cos q2 Y1* - e^q1 sin q2 Y2*",
        "line_variable": "s = q - (h/2) eta",
    }


@dataclass
class CaseResult:
    """Outcome of one verification case"""

    case_id: str
    status: str
    residual: Optional[str] = None
    magnitude: float = 0.0
    notes: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"Unknown case status: {self.status}")

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case_id": self.case_id,
            "status": self.status,
            "residual": self.residual,
            "magnitude": self.magnitude,
            "notes": self.notes,
        }


def exact_case(case_id: str, residual, notes: str = "") -> CaseResult:
    """Case that passes iff an exact residual (ExpPoly or DiffOperator) is zero"""
    zero = residual.is_zero()
    return CaseResult(case_id, PASS if zero else FAIL, str(residual), 0.0 if zero else 1.0, notes)


def tolerance_case(case_id: str, magnitude: float, tolerance: float, notes: str = "") -> CaseResult:
    """Case that passes iff a float error is within tolerance"""
    ok = magnitude <= tolerance
    return CaseResult(case_id, PASS if ok else FAIL, None, float(magnitude),
                      notes or f"tolerance {tolerance:g}")


@dataclass
class SuiteReport:
    """Cases produced by one suite"""

    suite: str
    cases: List[CaseResult] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)

    def add(self, case: CaseResult) -> None:
        self.cases.append(case)

    def extend(self, cases: List[CaseResult]) -> None:
        self.cases.extend(cases)

    @property
    def passed(self) -> bool:
        return not any(c.failed for c in self.cases)

    @property
    def overrides(self) -> List[CaseResult]:
        return [c for c in self.cases if c.status == OVERRIDE]

    def counts(self) -> Dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for c in self.cases:
            out[c.status] += 1
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "status": PASS if self.passed else FAIL,
            "counts": self.counts(),
            "config": self.config,
            "cases": [c.to_dict() for c in self.cases],
        }


@dataclass
class VerificationReport:
    """Top-level report for a verify run"""

    scope: str
    suites: List[SuiteReport] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)
    star_variant: str = "factorial"

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "scope": self.scope,
            "status": PASS if self.passed else FAIL,
            "config": self.config,
            "conventions": conventions(self.star_variant),
            "suites": [s.to_dict() for s in self.suites],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)

    def format_table(self) -> str:
        """Human-readable summary, one line per case"""
        lines = [f"Verification scope: {self.scope}"]
        for suite in self.suites:
            counts = suite.counts()
            lines.append(
                f"== {suite.suite}: {'PASS' if suite.passed else 'FAIL'} "
                f"({counts[PASS]} pass, {counts[FAIL]} fail, {counts[OVERRIDE]} override)")
            for case in suite.cases:
                line = f"  [{case.status:>16}] {case.case_id}"
                if case.status == FAIL and case.residual:
                    line += f"  residual: {case.residual}"
                elif case.magnitude:
                    line += f"  error: {case.magnitude:.3e}"
                if case.notes and case.status != PASS:
                    line += f"  ({case.notes})"
                lines.append(line)
        lines.append(f"Overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)
