"""Shared fixtures and the acceptance-criteria terminal summary.

The fuzz corpus is expensive enough to build once per session; two acceptance
tests consume it (oracle agreement and the cost-bound comparison), so it is
session-scoped and records its own wall-clock time.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass

import pytest

from bardec import FuzzSummary, GenSpec, fuzz_removals

_CRIT_RE = re.compile(r"test_criterion_(\d+)")

_LABELS = {
    1: "worked six-simplex reduction: exact R, V, barcode, stats",
    2: "identical R, distinct V: four-cycle removals stay distinguishable",
    3: "free removal: path edge costs zero additions",
    4: "star removals: hub, rim edge, shared fan edge, hollow tetra edge",
    5: "randomized removals agree with the from-scratch oracle",
    6: "exhaustive small-complex removals plus rank-sweep equality",
    7: "per-removal cost bound and mode comparison",
    8: "reduce CLI emits the worked usage/zero-flag stats",
    9: "every maximal removal matches exactly one barcode-delta case",
    10: "bench trends: sublinear average, max far below total",
}

_results: dict[int, str] = {}


def pytest_runtest_logreport(report: pytest.TestReport) -> None:
    m = _CRIT_RE.search(report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.failed:
        _results[num] = "FAIL"
    elif report.skipped:
        _results.setdefault(num, "SKIP")
    elif report.when == "call" and report.passed:
        _results.setdefault(num, "PASS")


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        label = _LABELS.get(num, "")
        terminalreporter.write_line(f"criterion {num:02d}: {_results[num]:4s} - {label}")


@dataclass
class FuzzCorpus:
    summaries: list[FuzzSummary]
    elapsed: float

    @property
    def trials(self) -> int:
        return sum(s.trials for s in self.summaries)


CORPUS_SPECS = [
    (GenSpec(model="er", n=15, seed=11), 200),
    (GenSpec(model="shuffled", n=12, seed=22), 150),
    (GenSpec(model="vr", n=25, seed=33, max_radius=0.35), 50),
    (GenSpec(model="lowerstar", n=30, seed=44), 100),
]


@pytest.fixture(scope="session")
def fuzz_corpus() -> FuzzCorpus:
    t0 = time.perf_counter()
    summaries = [fuzz_removals(spec, trials=trials, seed=spec.seed) for spec, trials in CORPUS_SPECS]
    return FuzzCorpus(summaries=summaries, elapsed=time.perf_counter() - t0)
