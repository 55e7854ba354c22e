import pytest

from bihom import constructions
from instances import INSTANCES


@pytest.fixture(autouse=True)
def verify_constructions(monkeypatch):
    # every construction re-checks its guarantee during the test run
    monkeypatch.setattr(constructions, "VERIFY", True)


@pytest.fixture(params=list(INSTANCES))
def instance(request):
    return INSTANCES[request.param]()


# -- acceptance summary ----------------------------------------------------------

_criteria: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or report.failed or report.skipped:
        _criteria.setdefault(props["criterion"], []).append(report.passed and not report.skipped)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n not in _criteria:
            continue
        verdict = "PASS" if all(_criteria[n]) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {CRITERIA[n]}")
