"""Carriers: validation, product sets, automorphism enumeration, centrality."""

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coslaw.fixtures import get_fixture
from coslaw.functions import ScalarFunction
from coslaw.semigroups import (
    FiniteSemigroup,
    enumerate_involutive_automorphisms,
    is_abelian_fn,
    is_central,
    product_set,
    validate,
    validate_automorphism,
)

BOOL_MULT = FiniteSemigroup(cayley=((0, 0), (0, 1)))


def test_compose_absorbing_element():
    assert BOOL_MULT.compose(0, 1) == 0
    assert BOOL_MULT.compose(1, 1) == 1


def test_compose_naturals_fixture():
    nat = get_fixture("naturals-from-2", window=50)
    assert nat.carrier.compose(2, 3) == 6


def test_compose_error_reporting():
    with pytest.raises(IndexError):
        BOOL_MULT.compose(0, 5)
    nat = get_fixture("naturals-from-2", window=50)
    with pytest.raises(ValueError, match="domain"):
        nat.carrier.compose(1, 3)  # 1 is outside N \ {1}


def test_compose_heisenberg_matches_matrix_oracle():
    # oracle: multiply the 3x3 upper unitriangular integer matrices directly
    def mat(t):
        x, y, z = t
        return np.array([[1, x, z], [0, 1, y], [0, 0, 1]], dtype=object)

    h3 = get_fixture("heisenberg", window=2)
    assert h3.carrier.compose((1, 0, 0), (0, 1, 0)) == (1, 1, 1)
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = tuple(int(v) for v in rng.integers(-4, 5, size=3))
        b = tuple(int(v) for v in rng.integers(-4, 5, size=3))
        prod = mat(a) @ mat(b)
        expect = (prod[0, 1], prod[1, 2], prod[0, 2])
        assert h3.carrier.compose(a, b) == expect


def test_validate_fixtures_clean(any_fixture):
    assert validate(any_fixture.carrier) == []


def test_validate_c2_table():
    assert validate(FiniteSemigroup(cayley=((0, 1), (1, 0)))) == []


def test_validate_finds_associativity_violation():
    bad = FiniteSemigroup(cayley=((1, 1), (0, 0)))
    report = validate(bad)
    assert report  # oracle: (0,0,0) gives (00)0 = 1*0 = 0 but 0(00) = 0*1 = 1
    assert ("associativity", 0, 0, 0) in report


def test_validate_closure_violation():
    bad = FiniteSemigroup(cayley=((0, 2), (0, 0)))
    assert ("closure", 0, 1) in validate(bad)


def test_product_set_naturals_is_composites():
    nat = get_fixture("naturals-from-2", window=50)
    s2 = product_set(nat.carrier, nat.carrier.elements)

    def is_prime(n):
        return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))

    expect = frozenset(x for x in range(4, 51) if not is_prime(x))
    assert s2 == expect


def test_product_set_empty_and_group():
    c2 = get_fixture("c2").carrier
    assert product_set(c2, []) == frozenset()
    assert product_set(c2, [1]) == frozenset({0})  # g*g = e


@given(st.data())
def test_product_set_monotone(data):
    name = data.draw(st.sampled_from(["c2", "c3", "leftzero2", "null3", "bool-mult"]))
    s = get_fixture(name).carrier
    u = data.draw(st.sets(st.sampled_from(list(s.elements))))
    t = data.draw(st.sets(st.sampled_from(sorted(u)))) if u else set()
    assert product_set(s, t) <= product_set(s, u)


def _automorphism_oracle(s):
    """Independent brute force: nested-loop check over all permutations."""
    found = []
    for perm in itertools.permutations(range(s.order)):
        if any(perm[perm[x]] != x for x in range(s.order)):
            continue
        ok = True
        for x in range(s.order):
            for y in range(s.order):
                if perm[s.cayley[x][y]] != s.cayley[perm[x]][perm[y]]:
                    ok = False
        if ok:
            found.append(perm)
    return sorted(found)


def test_enumerate_involutive_automorphisms_c3():
    s = get_fixture("c3").carrier
    autos = enumerate_involutive_automorphisms(s)
    assert [a.perm for a in autos] == _automorphism_oracle(s)
    assert [a.perm for a in autos] == [(0, 1, 2), (0, 2, 1)]  # identity + inversion


def test_enumerate_involutive_automorphisms_leftzero():
    s = get_fixture("leftzero2").carrier
    autos = enumerate_involutive_automorphisms(s)
    assert [a.perm for a in autos] == [(0, 1), (1, 0)]


def test_identity_always_enumerated(finite_fixture):
    autos = enumerate_involutive_automorphisms(finite_fixture.carrier)
    assert autos[0].perm == tuple(range(finite_fixture.carrier.order))


def test_enumerated_sigmas_are_automorphisms(any_fixture):
    for sigma in any_fixture.sigmas:
        assert validate_automorphism(any_fixture.carrier, sigma) == []


def test_order_bound_enforced():
    big = FiniteSemigroup(cayley=tuple(tuple(0 for _ in range(9)) for _ in range(9)))
    with pytest.raises(ValueError, match="bound"):
        enumerate_involutive_automorphisms(big)


def test_is_central_constant(any_fixture):
    s = any_fixture.carrier
    if s.is_finite:
        f = ScalarFunction(s, values=[2.0] * s.order)
    else:
        f = ScalarFunction(s, rule=lambda x: 2.0)
    assert is_central(s, f)
    assert is_abelian_fn(s, f)


def test_left_zero_central_forced():
    s = get_fixture("leftzero2").carrier
    f = ScalarFunction(s, values=[1.0, 2.0])
    assert not is_central(s, f)  # f(ab) = f(a) != f(b) = f(ba)


def test_family8_values_abelian_on_c3():
    from coslaw.families import FamilyDescriptor, construct

    fx = get_fixture("c3")
    s, sig = fx.carrier, fx.sigma("inv")
    pair = construct(s, sig, FamilyDescriptor(8, 2, chi=fx.characters["chi2"]))
    assert is_abelian_fn(s, pair.g) and is_abelian_fn(s, pair.f)
    assert is_central(s, pair.g) and is_central(s, pair.f)
