import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def family():
    """Graphs on 2..4 vertices with 1..4 edges, one per isomorphism class."""
    from tests.graphs import small_family

    return small_family()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, _title, _fn in mod.CRITERIA:
        if num in mod.RESULTS:
            ok, detail = mod.RESULTS[num]
            terminalreporter.write_line(f"CRITERION {num}: {'PASS' if ok else 'FAIL'} - {detail}")
