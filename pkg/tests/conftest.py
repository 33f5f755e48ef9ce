import pytest

from powertriples.elimination import replay_k3, replay_k4

# criterion id -> (passed, detail); filled by test_acceptance, printed at session end
ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def k3_report():
    return replay_k3(threads=1)


@pytest.fixture(scope="session")
def k4_report():
    return replay_k4(threads=1)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
