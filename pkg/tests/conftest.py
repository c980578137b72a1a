from contextlib import contextmanager

import pytest

# criterion number -> (passed, label); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, label = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {label}")


@pytest.fixture
def record_criterion():
    @contextmanager
    def record(number, label):
        ACCEPTANCE[number] = (False, label)
        try:
            yield
        except BaseException:
            print(f"criterion {number}: FAIL  {label}")
            raise
        ACCEPTANCE[number] = (True, label)
        print(f"criterion {number}: PASS  {label}")

    return record
