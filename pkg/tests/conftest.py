import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

acceptance_results: list[tuple[int, str, bool]] = []


@pytest.fixture
def acceptance():
    """Records one verdict line per acceptance criterion for the summary."""

    def record(num: int, name: str, ok: bool) -> None:
        acceptance_results.append((num, name, bool(ok)))
        assert ok, f"criterion {num} ({name}) failed"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus):
    if not acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, ok in sorted(acceptance_results):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num:>2} {name}: {verdict}")
