from __future__ import annotations

import pytest

from agridse.catalog import bundled_path, default_catalog, load_catalog
from agridse.constraints import load_scenario
from agridse.ilp import enumerate_configurations


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def cs1(catalog):
    return load_scenario("case_study_1", catalog)


@pytest.fixture(scope="session")
def cs2(catalog):
    return load_scenario("case_study_2", catalog)


@pytest.fixture(scope="session")
def cs1_configs(catalog, cs1):
    return enumerate_configurations(catalog, cs1)


@pytest.fixture(scope="session")
def cs2_configs(catalog, cs2):
    return enumerate_configurations(catalog, cs2)


@pytest.fixture(scope="session")
def proto_catalog():
    return load_catalog(bundled_path("prototype_catalog"))


@pytest.fixture(scope="session")
def proto_scenario(proto_catalog):
    return load_scenario("prototype_scenario", proto_catalog)


@pytest.fixture(autouse=True)
def _no_catalog_env(monkeypatch):
    monkeypatch.delenv("AGRIDSE_CATALOG", raising=False)


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per criterion

_CRITERIA: dict[int, list[tuple[str, str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            status = "FAIL (known, xfail)"
        elif rep.passed:
            status = "PASS"
        elif rep.skipped:
            status = "SKIP"
        else:
            status = "FAIL"
        detail = "; ".join(str(v) for k, v in rep.user_properties if k == "detail")
        _CRITERIA.setdefault(mark.args[0], []).append((item.name, status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        for name, status, detail in _CRITERIA[n]:
            line = f"criterion {n:>2}: {status:<20} {name}"
            terminalreporter.write_line(f"{line}  [{detail}]" if detail else line)
