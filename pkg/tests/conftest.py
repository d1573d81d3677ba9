import random
import warnings

import pytest
from hypothesis import HealthCheck, settings

from quadgor.field import GF, QQ
from quadgor.inverse import annihilator, example_G, family_F

settings.register_profile(
    "quadgor", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("quadgor")


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def family_ideals():
    """I_F for c = 6..10 over GF(32003), built once per session."""
    out = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for c in range(6, 11):
            out[c] = annihilator(family_F(c))
    return out


@pytest.fixture(scope="session")
def ideal_G():
    return annihilator(example_G(QQ))


@pytest.fixture(scope="session")
def fields():
    return [QQ, GF(), GF(101)]


ACCEPTANCE_RESULTS = {}


def record_acceptance(number: int, ok: bool, detail: str = ""):
    line = f"ACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
    ACCEPTANCE_RESULTS[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[k])
