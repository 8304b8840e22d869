import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py::test_criterion_" not in getattr(rep, "nodeid", "") or rep.when != "call":
                continue
            name = rep.nodeid.split("::")[-1]
            num = int(name.split("_")[2])
            detail = dict(rep.user_properties).get("criterion_detail", "")
            lines.append((num, f"criterion {num:2d} {'PASS' if outcome == 'passed' else 'FAIL'}  "
                               f"{name[len('test_criterion_00_'):]}: {detail}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
