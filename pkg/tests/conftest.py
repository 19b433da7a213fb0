import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)




def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(test_acceptance.VERDICTS):
            terminalreporter.write_line(test_acceptance.VERDICTS[k])
