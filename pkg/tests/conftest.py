import mpmath as mp
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("humbert", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("humbert")


def rel(a, b):
    a, b = mp.mpmathify(a), mp.mpmathify(b)
    return float(abs(a - b) / abs(b)) if b != 0 else float(abs(a))


@pytest.fixture(autouse=True)
def _restore_precision():
    dps = mp.mp.dps
    yield
    mp.mp.dps = dps


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
