import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cpslie.linalg import qarray

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

small_ints = st.integers(min_value=-3, max_value=3)
seeds = st.integers(min_value=0, max_value=2**32 - 1)
rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)


def int_matrices(rows, cols=None):
    cols = rows if cols is None else cols
    return st.lists(st.lists(small_ints, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(qarray)


def int_tensors(n, order=3):
    return st.lists(small_ints, min_size=n**order, max_size=n**order).map(
        lambda xs: qarray(xs).reshape((n,) * order)
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(mod.result_line(n))
