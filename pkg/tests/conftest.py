import pytest

from transurf.config import VerificationConfiguration
from transurf.moduli import coefficients_from_roots
from transurf.pipeline import construct
from transurf.report import verify_construction


@pytest.fixture(autouse=True)
def _no_tolerance_scale(monkeypatch):
    monkeypatch.delenv('TRANSURF_TOL_SCALE', raising=False)


@pytest.fixture(scope='session')
def config():
    return VerificationConfiguration()


@pytest.fixture(scope='session')
def example1():
    return coefficients_from_roots(-1, -1, 1)


@pytest.fixture(scope='session')
def example2():
    return coefficients_from_roots(-4, -1, 1)


@pytest.fixture(scope='session')
def example3():
    return coefficients_from_roots(-2, -1, 1)


@pytest.fixture(scope='session')
def example2_result(example2):
    return construct(example2, 1.3, s_span=(0.0, 20.0), h=1e-3, grid=101)


@pytest.fixture(scope='session')
def example2_report(example2_result, config):
    return verify_construction(example2_result, config)


@pytest.fixture(scope='session')
def example3_result(example3):
    return construct(example3, 1.1, s_span=(0.0, 20.0), h=1e-3, grid=101)


@pytest.fixture(scope='session')
def example1_result(example1):
    return construct(example1, 1.0, s_span=(0.0, 20.0), h=1e-3, grid=101)
