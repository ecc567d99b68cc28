from functools import lru_cache

import pytest

from ncv import automorphisms, build_named, enumerate_cycles


@lru_cache(maxsize=None)
def graph(family, *params):
    return build_named(family, params)


@lru_cache(maxsize=None)
def catalog(family, *params):
    return enumerate_cycles(graph(family, *params))


@lru_cache(maxsize=None)
def group(family, *params):
    return automorphisms(graph(family, *params))


@pytest.fixture(scope="session")
def petersen():
    return graph("petersen")


@pytest.fixture(scope="session")
def petersen_cat():
    return catalog("petersen")


# -- acceptance summary: one line per criterion ------------------------------

_criteria: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    key = name.split("_")[2]
    _criteria.setdefault(key, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=int):
        outcomes = _criteria[key]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {int(key):2d}: {status}  ({len(outcomes)} check(s))")
