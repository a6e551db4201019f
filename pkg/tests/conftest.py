import json
import os
import random
from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def data_file():
    def load(name):
        return json.loads((DATA / name).read_text())
    return load


# -- acceptance report -------------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None or rep.when not in ("setup", "call"):
        return
    if rep.when == "setup" and rep.passed:
        return
    n = m.args[0]
    detail = dict(item.user_properties).get("detail", "")
    if hasattr(rep, "wasxfail"):
        status = "FAIL"
        detail = f"expected failure: {rep.wasxfail}" + (f"; {detail}" if detail else "")
    elif rep.passed:
        status = "PASS"
    elif rep.skipped:
        status = "SKIP"
    else:
        status = "FAIL"
        if not detail and call.excinfo is not None:
            detail = call.excinfo.exconly().splitlines()[0][:200]
    # a criterion spread over several tests passes only if all of them do
    prev = _CRITERIA.get(n)
    if prev is not None and prev[0] != "PASS":
        return
    _CRITERIA[n] = (status, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}" + (f"  ({detail})" if detail else ""))
