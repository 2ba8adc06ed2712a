from __future__ import annotations

import pytest

_results: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or report.when not in ("setup", "call"):
        return
    number, title = mark.args
    entry = _results.setdefault(number, {"title": title, "ok": True, "seconds": 0.0, "notes": []})
    entry["seconds"] += report.duration
    if report.failed:
        entry["ok"] = False
    entry["notes"] += [text for key, text in item.user_properties if key == "note"]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        r = _results[number]
        status = "PASS" if r["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} {status}  {r['title']}  ({r['seconds']:.1f} s)")
        for note in r["notes"]:
            terminalreporter.write_line(f"              {note}")
