import pytest
from hypothesis import strategies as st

from netcert.exact_arith import FieldDescriptor
from netcert.net_geometry import MultiplicityProfile, delete_class, fermat_net, hesse_net

HESSE_PROFILE = MultiplicityProfile(4, 3, {2: 12})
FERMAT3_PROFILE = MultiplicityProfile(3, 3, {3: 3})
DELETED_HESSE_PROFILE = MultiplicityProfile(3, 3, {2: 9})


@pytest.fixture(scope="session")
def hesse():
    return hesse_net(FieldDescriptor.cyclotomic(3))


@pytest.fixture(scope="session")
def deleted_hesse(hesse):
    return delete_class(hesse, 0)


@pytest.fixture(scope="session")
def fermat3():
    return fermat_net(3, FieldDescriptor.cyclotomic(3))


@st.composite
def consistent_profiles(draw, max_m=8, max_d=12):
    """Random (m, d, t) satisfying m*C(d,2) = sum t_r*C(r,2); doubles absorb the remainder."""
    m = draw(st.integers(3, max_m))
    d = draw(st.integers(3, max_d))
    budget = m * d * (d - 1) // 2
    t = {}
    for r in range(d, 2, -1):
        pairs = r * (r - 1) // 2
        cap = min(budget // pairs, m)
        c = draw(st.integers(0, cap))
        if c:
            t[r] = c
            budget -= c * pairs
    if budget:
        t[2] = budget
    return MultiplicityProfile(m, d, t)


# acceptance outcomes, filled in by tests/test_acceptance.py and echoed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
