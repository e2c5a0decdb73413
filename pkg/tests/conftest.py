import time
from functools import lru_cache

import pytest

from brandt.complex import build_enhanced_complex

BUILD_SECONDS: dict = {}
ACCEPTANCE: dict = {}


@lru_cache(maxsize=None)
def complex_for(g, ell, N, max_dim=None):
    t = time.perf_counter()
    cx = build_enhanced_complex(g, ell, N, max_dim)
    BUILD_SECONDS[(g, ell, N, max_dim)] = time.perf_counter() - t
    return cx


@pytest.fixture(scope="session")
def cx_2_2_7():
    return complex_for(2, 2, 7)


@pytest.fixture(scope="session")
def cx_2_2_11():
    return complex_for(2, 2, 11)


@pytest.fixture(scope="session")
def cx_3_2_3():
    return complex_for(3, 2, 3)


@pytest.fixture(scope="session")
def cx_3_3_2():
    return complex_for(3, 3, 2, 1)


@pytest.fixture(scope="session")
def cx_1_2_11():
    return complex_for(1, 2, 11)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}")
