import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from cayleyham.group_core import Element, GroupParams

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# Permutations of three letters in the published numbering, as 0-based
# one-line images: s1 = (1 2), s2 = (2 3), s3 = (1 3), s4 = (1 2 3), s5 = (1 3 2).
SIGMA3 = {
    0: (0, 1, 2),
    1: (1, 0, 2),
    2: (0, 2, 1),
    3: (2, 1, 0),
    4: (1, 2, 0),
    5: (2, 0, 1),
}
SIGMA2 = {0: (0, 1), 1: (1, 0)}


def tup(params: GroupParams, phases, sigma: int) -> Element:
    """Element ``(phases | sigma_k)`` with phases reduced mod de."""
    table = SIGMA3 if params.n == 3 else SIGMA2
    return Element(tuple(a % params.de for a in phases), table[sigma])


@pytest.fixture
def make_tuple():
    return tup


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "VERDICTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
