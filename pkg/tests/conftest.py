import pytest
from hypothesis import HealthCheck, settings, strategies as st

from motivic_pairs.poly import ClassPoly
from motivic_pairs.wallcross import WallCrossingEngine

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def class_polys(max_exp=3, max_terms=5, coeff=5):
    keys = st.tuples(st.integers(0, max_exp), st.integers(0, max_exp))
    return st.dictionaries(keys, st.integers(-coeff, coeff), max_size=max_terms).map(ClassPoly)


def nonzero_polys(**kw):
    return class_polys(**kw).filter(lambda p: not p.is_zero())


@pytest.fixture(scope="session")
def engine2():
    return WallCrossingEngine(2)


@pytest.fixture(scope="session")
def engine3():
    return WallCrossingEngine(3)


ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance():
    """Records one PASS/FAIL line per acceptance criterion; the assertion is left to the test."""
    def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
        line = f"{'PASS' if passed else 'FAIL'} criterion {number:2d}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
