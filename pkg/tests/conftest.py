import pytest
from hypothesis import HealthCheck, settings

from qlat.coxeter import principal_basis
from qlat.roots import BasisChoice, build_root_system

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def cyclic():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = build_root_system(n, BasisChoice.CYCLIC)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def basis(cyclic):
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = principal_basis(cyclic(n))
        return cache[n]

    return get


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.fspath.basename == "test_acceptance.py":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        callspec = getattr(item, "callspec", None)
        if callspec is not None:
            doc += " [" + ", ".join(f"{k}={v}" for k, v in callspec.params.items()) + "]"
        _ACCEPTANCE.append((doc, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for doc, status in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {doc}")
