import os

import pytest
from hypothesis import HealthCheck, settings

from vrkunneth import flag

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# Every chain complex built while the suite runs, for the Euler characteristic sweep.
BUILT_COMPLEXES = []

_orig_init = flag.ChainComplex.__init__


def _recording_init(self, *args, **kwargs):
    _orig_init(self, *args, **kwargs)
    BUILT_COMPLEXES.append(self)


flag.ChainComplex.__init__ = _recording_init


# (criterion number, "PASS"/"FAIL", detail) lines from the acceptance suite.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n, verdict, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"{verdict} criterion {n}: {detail}")


def pytest_collection_modifyitems(session, config, items):
    last = [it for it in items if it.get_closest_marker("run_last")]
    items[:] = [it for it in items if not it.get_closest_marker("run_last")] + last


def pytest_configure(config):
    config.addinivalue_line("markers", "run_last: run after everything else")
    config.addinivalue_line("markers", "slow: long-running")


@pytest.fixture(scope="session")
def rp2_complex():
    from vrkunneth import build_flag_complex, chain_complex, rp2_flag

    return chain_complex(build_flag_complex(rp2_flag(), 3))
