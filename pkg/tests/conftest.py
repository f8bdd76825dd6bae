import pytest

# lines recorded by the acceptance tests, echoed after the run
CRITERIA = []


@pytest.fixture
def record_criterion():
    def record(number, passed, detail):
        CRITERIA.append(f"{'PASS' if passed else 'FAIL'} criterion {number}: {detail}")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
