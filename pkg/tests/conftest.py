"""Acceptance bookkeeping: tests marked ``criterion(n, name)`` roll up into one line per criterion."""
import pytest

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, name): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n, name = mark.args
    entry = _results.setdefault(n, {"name": name, "ok": True, "failed": []})
    if rep.failed:
        entry["ok"] = False
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        e = _results[n]
        line = f"criterion {n} {e['name']}: {'PASS' if e['ok'] else 'FAIL'}"
        if e["failed"]:
            line += f"  (failing: {', '.join(e['failed'])})"
        terminalreporter.write_line(line)
