import numpy as np
import pytest

from plcsnet.ingest import SeriesPanel, load_sample_panel


@pytest.fixture(scope="session")
def sample_panel():
    return load_sample_panel()


def make_panel(n_entities=3, start=1970, end=2011, seed=0):
    rng = np.random.default_rng(seed)
    periods = list(range(start, end + 1))
    values = 1000 + np.cumsum(rng.normal(10, 5, size=(len(periods), n_entities)), axis=0)
    codes = [f"E{k:02d}" for k in range(n_entities)]
    return SeriesPanel(codes, periods, values)


@pytest.fixture
def small_panel():
    return make_panel()


_ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def acceptance_line(request):
    """Attach a one-line detail to an acceptance criterion."""

    def record(name, detail):
        request.node.user_properties.append(("criterion", name))
        request.node.user_properties.append(("detail", detail))

    return record


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criteria, reported one line each")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "acceptance" not in report.keywords:
        return
    props = dict(report.user_properties)
    name = props.get("criterion", report.nodeid.split("::")[-1])
    status = "PASS" if report.passed else "FAIL"
    _ACCEPTANCE[report.nodeid] = f"{status}  {name:<18} {props.get('detail', '')}"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE.values():
        terminalreporter.write_line(line)
