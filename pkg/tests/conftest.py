import json
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=25, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GOLDENS = os.path.join(os.path.dirname(__file__), "goldens", "oracle_values.json")


@pytest.fixture(scope="session")
def goldens():
    with open(GOLDENS) as fh:
        return json.load(fh)


def cplx(pair):
    return complex(pair[0], pair[1])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS):
            terminalreporter.write_line(line)
