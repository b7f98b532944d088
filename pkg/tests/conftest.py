import pytest

from domgame.graph import Graph


def trident_graph() -> Graph:
    """Vertex 0 owns three anchor-bridges 1, 6, 11; each bridge z has leaf z+1 and anchor z+2,
    and anchor z+2 has the dependent parent z+3 with leaf z+4."""
    edges = []
    for i in range(3):
        z = 1 + 5 * i
        edges += [(0, z), (z, z + 1), (z, z + 2), (z + 2, z + 3), (z + 3, z + 4)]
    return Graph(16, edges)


@pytest.fixture
def trident():
    return trident_graph()


# acceptance verdicts, one line per criterion, printed after the run
VERDICTS: dict[int, str] = {}


@pytest.fixture
def verdict(request):
    """Record PASS/FAIL for the criterion named by the test's `criterion` marker."""
    num = request.node.get_closest_marker("criterion").args[0]
    info = {"detail": ""}
    yield info
    failed = getattr(request.node, "rep_call", None) is None or request.node.rep_call.failed
    line = f"criterion {num}: {'FAIL' if failed else 'PASS'}  {info['detail']}".rstrip()
    VERDICTS[num] = line
    print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[num])
