import pytest

_CRITERIA: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    cid, title = marker.args
    entry = _CRITERIA.setdefault(cid, [title, True])
    if report.failed:
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_CRITERIA, key=lambda c: int(c[2:])):
        title, ok = _CRITERIA[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {cid}  {title}")
