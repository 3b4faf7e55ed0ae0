import pytest

from fk3hh.session import Config, Session


@pytest.fixture(scope="session")
def session():
    S = Session(Config())
    S.R
    return S


@pytest.fixture(scope="session")
def perturbed(session):
    return session.perturbed()


@pytest.fixture(scope="session")
def R(session):
    return session.R


@pytest.fixture(scope="session")
def C(session):
    return session.C


@pytest.fixture(scope="session")
def G(session):
    return session.G


@pytest.fixture(scope="session")
def P(session):
    return session.P


@pytest.fixture(scope="session")
def B(session):
    return session.B


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
