import hypothesis
import pytest

from scored_ap import OverlayConfig, ScoreModel, ScoreWidth, compile_pattern, place

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

DEFAULT_MODEL = ScoreModel(2, -1, -2)

_acceptance_results = []


@pytest.fixture
def default_model():
    return DEFAULT_MODEL


@pytest.fixture
def agc():
    return compile_pattern(b"AGC", DEFAULT_MODEL)


@pytest.fixture
def agc_placement(agc):
    return place([agc], OverlayConfig(array_size=1024))


def place_wide(automata, bits=64):
    """Place with a register width that never clamps at test scale."""
    total = sum(len(n) for n in automata)
    return place(automata, OverlayConfig(array_size=max(1024, total), max_fanout=4096, score_width=ScoreWidth(bits)))


@pytest.fixture(scope="session", autouse=True)
def warm_jit():
    # compile (or load cached) kernels once so timed tests measure execution only
    from scored_ap import RunMode, new_engine

    p = place([compile_pattern(b"A", DEFAULT_MODEL)], OverlayConfig(array_size=1024))
    wide = place_wide([compile_pattern(b"A", DEFAULT_MODEL)])
    for mode in RunMode:
        new_engine(p, mode).run(b"AC")
        new_engine(wide, mode).run(b"AC")
        new_engine(p, mode).count(b"AC")
        new_engine(wide, mode).count(b"AC")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _acceptance_results:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({duration:.2f}s)")
