import pytest
from hypothesis import HealthCheck, settings

from multirees import FiltrationFamily, PolynomialRing, QuotientRing

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

CUBIC = "u^3 - v^3 + (u+v)*w^2 + x^3 + y^3 + y*z^2"


@pytest.fixture(scope="session")
def ring6():
    return PolynomialRing("u v w x y z".split())


@pytest.fixture(scope="session")
def cubic(ring6):
    return ring6.parse(CUBIC)


@pytest.fixture(scope="session")
def quotient41(ring6, cubic):
    return QuotientRing(ring6, [cubic])


@pytest.fixture(scope="session")
def family41(quotient41):
    return FiltrationFamily(quotient41, ["u", "v"])


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import SUMMARY

    if SUMMARY:
        terminalreporter.section("acceptance criteria")
        for k in sorted(SUMMARY):
            terminalreporter.write_line(SUMMARY[k])
