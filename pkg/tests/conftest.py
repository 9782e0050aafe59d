import shutil

import pytest

from ubsolve.dio import SolverConfig

Z3 = shutil.which("z3")
_criteria: dict[str, tuple[list, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name, text): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name, text = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        verdict = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        _criteria.setdefault(name, ([], text))[0].append(verdict)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n[2:])):
        verdicts, text = _criteria[name]
        # one failing part fails the criterion; skipped parts (missing z3) are reported but do not fail it
        verdict = next((v for v in ("FAIL", "PASS") if v in verdicts), "SKIP")
        skipped = verdicts.count("SKIP")
        note = f" ({skipped} part(s) skipped)" if skipped and verdict != "SKIP" else ""
        terminalreporter.write_line(f"{name} {verdict}: {text}{note}")


@pytest.fixture
def internal():
    return SolverConfig()


@pytest.fixture
def z3():
    if Z3 is None:
        pytest.skip("z3 not installed")
    return SolverConfig(backend="external", command="z3 -in -smt2")


@pytest.fixture(params=["internal", "z3"])
def backend(request):
    if request.param == "internal":
        return SolverConfig()
    if Z3 is None:
        pytest.skip("z3 not installed")
    return SolverConfig(backend="external", command="z3 -in -smt2")
