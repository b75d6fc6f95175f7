import time

import pytest

# wall-clock anchor for the whole-suite time budget check
SESSION_T0 = time.monotonic()


@pytest.fixture(scope="session")
def session_t0():
    return SESSION_T0
