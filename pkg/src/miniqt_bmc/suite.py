"""Benchmark-suite runner and outcome taxonomy.

Manifest format: one case per line, `<path> <TRUE|FALSE>
[expected-message-substring]`, paths relative to the manifest.  TRUE
means the program is expected to verify; FALSE means a violation with
the given message fragment is expected.  Outcomes are classified into
successful / false incorrect / false correct / failed / timeout /
memout, with rates rendered to two decimals (half-up).
"""

from __future__ import annotations

import concurrent.futures
import json
import os
import time
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional

from .config import VerifierConfig
from .errors import MiniQtError, ZeroTotal
from .verify import FAILED, MEMOUT, SUCCESSFUL, TIMEOUT, verify_file

CATEGORIES = ("successful", "false_incorrect", "false_correct",
              "failed", "timeout", "memout")


@dataclass
class BenchmarkCase:
    path: str
    expect_failed: bool
    expected_message: Optional[str] = None


@dataclass
class CaseOutcome:
    case: BenchmarkCase
    status: str  # VerificationResult status or "crash"
    message: Optional[str]
    classification: str
    wall_time_seconds: float
    peak_memory_kb: int


@dataclass
class SuiteReport:
    cases: list[CaseOutcome]
    counts: dict[str, int]
    rates: dict[str, str]
    total_wall_time_seconds: float

    @property
    def all_as_expected(self) -> bool:
        return self.counts["successful"] == len(self.cases)


def load_manifest(path: str) -> list[BenchmarkCase]:
    base = os.path.dirname(os.path.abspath(path))
    cases: list[BenchmarkCase] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(None, 2)
            if len(parts) < 2 or parts[1] not in ("TRUE", "FALSE"):
                raise MiniQtError(
                    f"{path}:{lineno}: expected `<path> TRUE|FALSE [message]`"
                )
            message = parts[2].strip() if len(parts) == 3 else None
            if message and message.startswith('"') and message.endswith('"'):
                message = message[1:-1]
            case_path = os.path.join(base, parts[0])
            if not os.path.isfile(case_path):
                raise MiniQtError(f"{path}:{lineno}: no such file {parts[0]}")
            cases.append(BenchmarkCase(case_path, parts[1] == "FALSE", message))
    return cases


def classify(case: BenchmarkCase, status: str, message: Optional[str]) -> str:
    """Pure mapping from (expected, actual) to the outcome taxonomy."""
    if status == TIMEOUT:
        return "timeout"
    if status == MEMOUT:
        return "memout"
    if status in ("tool-error", "crash"):
        return "failed"
    if case.expect_failed:
        if status == FAILED:
            if case.expected_message and case.expected_message not in (message or ""):
                # A violation was found, but not the expected property.
                return "false_incorrect"
            return "successful"
        return "false_correct"
    if status == SUCCESSFUL:
        return "successful"
    return "false_incorrect"


def _run_case(args: tuple[BenchmarkCase, VerifierConfig]) -> CaseOutcome:
    case, config = args
    try:
        result = verify_file(case.path, config)
        status = result.status
        message = (result.counterexample.violated_message
                   if result.counterexample else result.error)
        wall = result.wall_time_seconds
        memory = result.peak_memory_kb
    except Exception as err:  # a crash is its own suite category
        status, message, wall, memory = "crash", str(err), 0.0, 0
    return CaseOutcome(case, status, message, classify(case, status, message),
                       wall, memory)


def run_suite(manifest_path: str, config: VerifierConfig,
              jobs: int = 1) -> SuiteReport:
    """Verify every manifest case and aggregate the taxonomy counts."""
    cases = load_manifest(manifest_path)
    start = time.monotonic()
    work = [(case, config) for case in cases]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_case, work))
    else:
        outcomes = [_run_case(item) for item in work]
    counts = {name: 0 for name in CATEGORIES}
    for outcome in outcomes:
        counts[outcome.classification] += 1
    return SuiteReport(outcomes, counts, compute_rates(counts),
                       time.monotonic() - start)


def compute_rates(counts: dict[str, int]) -> dict[str, str]:
    """Percentages of total, two decimals, half-up: {2 of 54} -> '3.70%'."""
    total = sum(counts.values())
    if total <= 0:
        raise ZeroTotal("cannot compute rates over zero cases")
    rates = {}
    for name, count in counts.items():
        if count < 0:
            raise MiniQtError(f"negative count for {name}")
        value = (Decimal(count) * 100 / Decimal(total)).quantize(
            Decimal("0.01"), rounding=ROUND_HALF_UP
        )
        rates[name] = f"{value}%"
    return rates


def format_report(report: SuiteReport) -> str:
    lines = []
    width = max((len(os.path.basename(o.case.path)) for o in report.cases),
                default=4)
    for outcome in report.cases:
        expected = "FALSE" if outcome.case.expect_failed else "TRUE"
        lines.append(
            f"{os.path.basename(outcome.case.path):{width}s}  "
            f"expected={expected:5s}  actual={outcome.status:11s}  "
            f"{outcome.classification:15s}  {outcome.wall_time_seconds:6.2f}s"
        )
    lines.append("")
    total = len(report.cases)
    lines.append(f"total cases: {total}")
    for name in CATEGORIES:
        label = name.replace("_", " ")
        lines.append(
            f"  {label:16s} {report.counts[name]:3d}  {report.rates[name]:>8s}"
        )
    lines.append(f"total wall time: {report.total_wall_time_seconds:.2f}s")
    return "\n".join(lines)


def report_to_json(report: SuiteReport) -> dict:
    """Machine-readable report; stable except for the timing fields."""
    return {
        "total": len(report.cases),
        "counts": dict(report.counts),
        "rates": dict(report.rates),
        "total_wall_time_seconds": round(report.total_wall_time_seconds, 3),
        "cases": [
            {
                "path": outcome.case.path,
                "expected": "FALSE" if outcome.case.expect_failed else "TRUE",
                "expected_message": outcome.case.expected_message,
                "actual": outcome.status,
                "message": outcome.message,
                "classification": outcome.classification,
                "time_seconds": round(outcome.wall_time_seconds, 3),
                "memory_kb": outcome.peak_memory_kb,
            }
            for outcome in report.cases
        ],
    }


def write_report(report: SuiteReport, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_json(report), fh, indent=2)
        fh.write("\n")
