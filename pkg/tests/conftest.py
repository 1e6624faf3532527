import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _CRITERIA.get(report.nodeid)
    if marker is None:
        return
    number, title = marker
    status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
    _RESULTS[number] = (status, title, report.duration)


_RESULTS = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _CRITERIA[item.nodeid] = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        status, title, duration = _RESULTS[number]
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} ({duration:.2f}s)")


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""
    from exotic7.cli import main

    def run(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return run
