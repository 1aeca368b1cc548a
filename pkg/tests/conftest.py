import re

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        checks = dict(report.user_properties).get("checks", [])
        _acceptance[num] = (m.group(2).replace("_", " "), report.outcome, checks)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        name, outcome, checks = _acceptance[num]
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"criterion {num:2d} {status}  {name}"
        failed = [f"{c} ({detail})" if detail else c for c, ok, detail in checks if not ok]
        if failed:
            line += "  failed: " + "; ".join(failed)
        terminalreporter.write_line(line)
