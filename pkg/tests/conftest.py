import pytest

from coslaw.fixtures import get_fixture
from coslaw.semigroups import FiniteSemigroup, identity_automorphism

FINITE_NAMES = ["c2", "c3", "leftzero2", "null3", "bool-mult"]
ALL_NAMES = FINITE_NAMES + ["real-line", "heisenberg", "naturals-from-2"]


@pytest.fixture(params=FINITE_NAMES)
def finite_fixture(request):
    return get_fixture(request.param)


@pytest.fixture(params=ALL_NAMES)
def any_fixture(request):
    if request.param == "naturals-from-2":
        return get_fixture(request.param, window=50)
    if request.param == "heisenberg":
        return get_fixture(request.param, window=2)
    return get_fixture(request.param)


@pytest.fixture
def one_element():
    s = FiniteSemigroup(cayley=((0,),))
    return s, identity_automorphism(s)
