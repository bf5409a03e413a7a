"""Per-criterion reporting for the acceptance suite."""

import re

import pytest

_results: dict[str, dict] = {}


def _order(key: str):
    num, rest = re.match(r"(\d+)(.*)", key).groups()
    return int(num), rest


def pytest_addoption(parser):
    parser.addoption("--tower-n5", action="store_true", help="also run the level-5 tower checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed and not rep.skipped):
        return
    number, title = mark.args
    entry = _results.setdefault(str(number), {"title": title, "failed": [], "passed": 0, "skipped": 0, "notes": []})
    if rep.failed:
        entry["failed"].append(item.name)
    elif rep.skipped:
        entry["skipped"] += 1
    elif rep.when == "call":
        entry["passed"] += 1
    entry["notes"].extend(v for k, v in item.user_properties if k == "erratum_candidate" and rep.when == "call")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results, key=_order):
        e = _results[number]
        status = "FAIL" if e["failed"] else "PASS" if e["passed"] else "SKIP"
        detail = f" ({', '.join(e['failed'])})" if e["failed"] else ""
        tr.write_line(f"AC{number:<6} {status}  {e['title']}{detail}")
    notes = [(n, note) for n in sorted(_results, key=_order) for note in _results[n]["notes"]]
    if notes:
        tr.section("erratum candidates")
        for n, note in notes:
            tr.write_line(f"AC{n}: {note}")
