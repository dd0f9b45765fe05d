import re

CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)$")


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    lines = {}
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            name = report.nodeid.rsplit("::", 1)[-1]
            match = CRITERION.match(name)
            if match and "without" not in name:  # skip the green variants
                number = int(match.group(1))
                label = match.group(2).replace("_", " ")
                lines[number] = (label, outcome.upper())
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        label, outcome = lines[number]
        terminalreporter.write_line(
            f"criterion {number:2d} ({label}): {outcome}")
