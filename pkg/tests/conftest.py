"""Per-criterion PASS/FAIL summary for the acceptance suite.

Tests tagged ``@pytest.mark.criterion(k, "description")`` are grouped by
``k``; a criterion passes when every test tagged with it passes.
"""

_CRITERIA: dict = {}  # k -> description
_NODES: dict = {}  # nodeid -> k
_FAILED: set = set()
_SEEN: set = set()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, text): acceptance criterion k")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            k, text = mark.args
            _CRITERIA[k] = text
            _NODES[item.nodeid] = k


def pytest_runtest_logreport(report):
    k = _NODES.get(report.nodeid)
    if k is None:
        return
    if report.when == "call" or report.failed:
        _SEEN.add(k)
    if report.failed:
        _FAILED.add(k)


def pytest_terminal_summary(terminalreporter):
    if not _SEEN:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        if k not in _SEEN:
            status = "SKIP"
        else:
            status = "FAIL" if k in _FAILED else "PASS"
        terminalreporter.write_line(f"criterion {k:>2}: {status}  {_CRITERIA[k]}")
