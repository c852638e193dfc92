import functools
import sys

import pytest

from growthlab import kernels
from growthlab.catalog import load_group
from growthlab.cayley import enumerate_growth

BACKENDS = sorted(kernels.available_backends())


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per kernel backend."""
    impl = kernels.available_backends()[request.param]
    for name in ("reduce_word", "reduce_rows", "irreducible_mask"):
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param


@functools.lru_cache(maxsize=None)
def table_for(key, radius, store=True):
    return enumerate_growth(load_group(key), radius, store_elements=store)


@pytest.fixture
def f2():
    return load_group("f2")


@pytest.fixture
def c2c3():
    return load_group("c2c3")


@pytest.fixture
def z():
    return load_group("z")


@pytest.fixture
def z2():
    return load_group("z2")


@pytest.fixture
def surface():
    return load_group("surface2")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in acceptance.TITLES:
        if key not in acceptance.RESULTS:
            continue
        ok, detail = acceptance.RESULTS[key]
        line = f"criterion {key:<3} {'PASS' if ok else 'FAIL'}  {acceptance.TITLES[key]}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
