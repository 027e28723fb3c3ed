import pytest
from hypothesis import strategies as st

from qsjacobi.fixtures import r11, r22
from qsjacobi.superpoly import Parity

_acceptance = []


@pytest.fixture
def T11():
    return r11()


@pytest.fixture
def T22():
    return r22()


def words(space, names=None, max_len=3):
    names = names or [v.name for v in space.algebra.variables]
    return st.lists(st.sampled_from(names), max_size=max_len)


def polys(space, names=None, max_terms=4, max_len=3, parity=None):
    """Hypothesis strategy for SuperPolys; parity-homogeneous when parity is given."""
    alg = space.algebra
    word = words(space, names, max_len)
    if parity is not None:
        word = word.filter(
            lambda w: sum(int(alg.variable(n).parity) for n in w) % 2 == int(parity))
    term = st.tuples(st.integers(-5, 5).filter(bool), word)

    def build(ts):
        out = alg.zero()
        for c, w in ts:
            out = out + alg.monomial(w, c)
        return out

    return st.lists(term, min_size=1, max_size=max_terms).map(build)


def homogeneous(space, names=None, **kw):
    return st.sampled_from([Parity.EVEN, Parity.ODD]).flatmap(
        lambda p: polys(space, names, parity=p, **kw))


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
