import random

import pytest

from dgcoalg import fixtures as F
from dgcoalg.linalg import QQ, Field

F5 = Field.prime(5)


@pytest.fixture
def rng():
    return random.Random(20261019)


def bundled_coalgebras():
    return [F.trivial(), F.grouplikes(2), F.grouplikes(3), F.divided_powers(), F.matrix_coalgebra(),
            F.acyclic_extension(), F.acyclic_extension(True)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
