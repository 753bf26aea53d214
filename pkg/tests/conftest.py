"""Print one pass/fail line per acceptance criterion after the run."""
import pytest

_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and item.name.startswith("test_ac"):
        if rep.when == "call" or (rep.when == "setup" and rep.failed):
            _results[item.name] = (item.function, rep.passed, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    from test_acceptance import summary_line

    terminalreporter.section("acceptance criteria")
    for name in sorted(_results):
        fn, ok, dur = _results[name]
        terminalreporter.write_line(summary_line(fn, ok, dur))
