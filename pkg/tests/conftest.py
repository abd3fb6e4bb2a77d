import functools
import sys
from pathlib import Path

import pytest

from sbsyz import build_algebra, build_lambda

DATA = Path(__file__).resolve().parents[1] / "src" / "sbsyz" / "data"


@functools.lru_cache(maxsize=None)
def lam(m, r=1):
    return build_algebra(build_lambda(m, r))


@pytest.fixture
def lam1():
    return lam(1, 1)


@pytest.fixture
def lam2():
    return lam(2, 1)


@pytest.fixture
def fixture_path():
    return DATA / "lambda1.alg"


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
