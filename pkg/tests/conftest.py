from collections import defaultdict

import re

import pytest

ACCEPTANCE = defaultdict(list)


@pytest.fixture
def criterion_line():
    """Record a PASS/FAIL result for an acceptance criterion (one or more instances)."""

    def record(num, ok, text):
        ACCEPTANCE[num].append((bool(ok), text))
        print(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {text}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    # a criterion that raised before recording still gets a FAIL line
    for rep in terminalreporter.stats.get("failed", []) + terminalreporter.stats.get("error", []):
        m = re.search(r"test_criterion_(\d+)", rep.nodeid)
        if m and not any(not ok for ok, _ in ACCEPTANCE[int(m.group(1))]):
            ACCEPTANCE[int(m.group(1))].append((False, f"{rep.nodeid.split('::')[-1]} raised"))
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        entries = ACCEPTANCE[num]
        ok = all(e[0] for e in entries)
        text = " | ".join(t for _, t in entries)
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {text}")
