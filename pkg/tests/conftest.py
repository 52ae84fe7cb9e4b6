import os
import random

import pytest
from hypothesis import HealthCheck, settings

from hopfrg.arith import PositiveIntegers, SymmetricAlgebra
from hopfrg.convolution import ConvContext
from hopfrg.trees import PlanarRootedTrees, RootedTrees

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def trees():
    return RootedTrees()


@pytest.fixture(scope="session")
def planar():
    return PlanarRootedTrees()


@pytest.fixture(scope="session")
def integers():
    return PositiveIntegers()


@pytest.fixture(scope="session")
def symmetric():
    return SymmetricAlgebra()


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def tctx(trees):
    return ConvContext(trees, 12)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
