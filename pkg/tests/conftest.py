import numpy as np
import pytest

from gharmonics import Params


def rand_complex(rng, bound=1.0):
    """Uniform sample from the closed disc ``|z| <= bound``."""
    radius = bound * np.sqrt(rng.random())
    return complex(radius * np.exp(2j * np.pi * rng.random()))


def rand_params(rng, bound=1.0):
    return Params(rand_complex(rng, bound), rand_complex(rng, bound), rand_complex(rng, bound))


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
