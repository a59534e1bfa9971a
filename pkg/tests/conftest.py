import re

_CRITERIA = {}
_PATTERN = re.compile(r"test_criterion_(\d+)_(\w+)$")


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        summary = dict(report.user_properties).get("summary", "")
        _CRITERIA[key] = (m.group(2).replace("_", " "), report.outcome, summary)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        name, outcome, summary = _CRITERIA[key]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{verdict}] {key:2d}. {name}"
        terminalreporter.write_line(f"{line}: {summary}" if summary else line)
