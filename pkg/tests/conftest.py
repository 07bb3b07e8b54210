from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for marker in report.keywords:
        if marker.startswith("criterion_"):
            num = int(marker.split("_")[1])
            status = "PASS" if report.passed else "FAIL"
            prev = ACCEPTANCE_RESULTS.get(num)
            if prev is None or prev[0] == "PASS":
                ACCEPTANCE_RESULTS[num] = (status, report.nodeid)


def pytest_configure(config):
    for i in range(1, 12):
        config.addinivalue_line("markers", f"criterion_{i}: acceptance criterion {i}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        status, nodeid = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  ({nodeid.split('::')[-1]})")
