"""Check reports: one record per verification, serializable to JSON."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass


@dataclass
class RepCheckReport:
    example: str
    check: str
    passed: bool
    residual: object  # float or the string "exact-zero"
    ms: float

    def to_json(self):
        return {
            "example": self.example,
            "check": self.check,
            "pass": self.passed,
            "residual": self.residual,
            "ms": self.ms,
        }


def run_checks(example, checks, workers=1):
    """Run (name, callable) pairs; callables return (passed, residual).

    `residual` may be a bool check's None (reported as exact-zero/1.0), an
    exact zero (reported as "exact-zero") or a float.
    """

    def one(item):
        name, fn = item
        start = time.perf_counter()
        try:
            passed, residual = fn()
        except Exception as exc:  # noqa: BLE001 - reported, not swallowed
            return RepCheckReport(
                example, name, False, f"error: {exc}", (time.perf_counter() - start) * 1e3
            )
        ms = (time.perf_counter() - start) * 1e3
        if residual is None:
            residual = "exact-zero" if passed else 1.0
        elif not isinstance(residual, str):
            residual = "exact-zero" if residual == 0 else float(residual)
        return RepCheckReport(example, name, bool(passed), residual, ms)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, checks))
    return [one(item) for item in checks]


def summarize(reports):
    lines = []
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        lines.append(
            f"[{status}] {r.example}/{r.check}: residual={r.residual} ({r.ms:.1f} ms)"
        )
    return "\n".join(lines)


def all_passed(reports):
    return all(r.passed for r in reports)
