import numpy as np
import pytest

from gtcodec.bench import synthesize_corpus


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def speech_corpus(tmp_path_factory):
    d = tmp_path_factory.mktemp("speech")
    synthesize_corpus(d, n_files=5, seconds=1.0, sample_rate=8000, style="speech", seed=1)
    return d


@pytest.fixture(scope="session")
def desk_corpus(tmp_path_factory):
    """Ten ~5 s files, the desk-scale corpus of the end-to-end run."""
    d = tmp_path_factory.mktemp("desk")
    synthesize_corpus(d, n_files=5, seconds=5.0, sample_rate=16000, style="speech", seed=7)
    synthesize_corpus(d, n_files=5, seconds=5.0, sample_rate=16000, style="music", seed=8)
    return d


ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (passed, detail)."""
    name = request.node.name

    def record(passed, detail=""):
        ACCEPTANCE[name] = (bool(passed), detail)
        return passed

    yield record
    if name not in ACCEPTANCE:
        ACCEPTANCE[name] = (False, "did not complete")


def pytest_runtest_logreport(report):
    # a criterion whose assertion failed after recording must not print PASS
    name = report.nodeid.rsplit("::", 1)[-1]
    if report.when == "call" and report.failed and name in ACCEPTANCE:
        ACCEPTANCE[name] = (False, ACCEPTANCE[name][1])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
