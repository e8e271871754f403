"""Per-criterion summary for the acceptance suite."""
from collections import defaultdict

_results = defaultdict(list)
_titles = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    number, title = crit
    _titles[number] = title
    detail = dict(report.user_properties).get("detail", "")
    _results[number].append((report.nodeid.split("::")[-1], report.outcome, detail))


def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", (m.args[0], m.args[1])))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        parts = _results[number]
        ok = all(outcome == "passed" for _, outcome, _ in parts)
        tr.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {_titles[number]}")
        for name, outcome, detail in parts:
            tr.write_line(f"    {outcome:<6} {name}{'  ' + detail if detail else ''}")
