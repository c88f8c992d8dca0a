import os
import sys

import pytest

from umx import gen

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE.append((marker.args[0], rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from umx import kernels

    terminalreporter.section(f"acceptance criteria (kernels: {kernels.BACKEND})")
    for label, outcome in sorted(_ACCEPTANCE):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {label}")


@pytest.fixture(scope="session")
def ex29():
    return gen.example29()


@pytest.fixture
def run_cli():
    """Run the CLI in a subprocess; returns (exit code, stdout bytes, stderr text)."""
    import subprocess

    def run(*args, env=None):
        full_env = dict(os.environ)
        full_env.pop("UMX_SEED", None)
        full_env.update(env or {})
        proc = subprocess.run(
            [sys.executable, "-m", "umx", *args], capture_output=True, env=full_env, timeout=600
        )
        return proc.returncode, proc.stdout, proc.stderr.decode()

    return run
