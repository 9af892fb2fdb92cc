from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cyclobmw.ring import MultiPoly


def polys(nvars=2, max_terms=4, max_exp=3):
    """Hypothesis strategy for small MultiPoly values."""
    exps = st.tuples(*[st.integers(0, max_exp)] * nvars)
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: MultiPoly(nvars, d))


def rationals():
    return st.fractions(min_value=-10, max_value=10, max_denominator=6)


@pytest.fixture
def u2():
    return MultiPoly.variables(2)


@pytest.fixture
def point23():
    return (Fraction(2), Fraction(3))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
