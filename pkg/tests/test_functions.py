"""Scalar functions: parity decomposition, characters, null sets."""

import cmath
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coslaw.exactnum import values_equal
from coslaw.fixtures import get_fixture
from coslaw.functions import (
    ScalarFunction,
    additive_basis,
    check_pchi_lemma,
    enumerate_multiplicative,
    even_part,
    is_additive,
    is_multiplicative,
    linear_combination,
    null_sets,
    odd_part,
    star,
)

F = Fraction

complex_values = st.complex_numbers(
    min_magnitude=0, max_magnitude=4, allow_nan=False, allow_infinity=False
)


# ---------------------------------------------------------------------------
# star and parity
# ---------------------------------------------------------------------------


def test_star_identity_sigma():
    fx = get_fixture("c3")
    f = ScalarFunction(fx.carrier, values=[1.0, 2.0, 3.0])
    assert star(f, fx.sigma("id")).equal_to(f)


def test_star_exponential_on_real_line():
    rl = get_fixture("real-line")
    chi = rl.character("exp", lam=1.25)
    st_fn = star(chi.fn, rl.sigma("neg"))
    for x in rl.carrier.elements[:8]:
        assert abs(st_fn(x) - cmath.exp(-1.25j * x)) < 1e-12


def test_star_is_involution():
    rl = get_fixture("real-line")
    f = rl.character("exp", lam=2 + 1j).fn
    twice = star(star(f, rl.sigma("neg")), rl.sigma("neg"))
    assert twice.equal_to(f, tol=1e-12)


def test_euler_split_on_grid():
    # oracle: cos and i*sin evaluated independently via cmath
    rl = get_fixture("real-line")
    neg = rl.sigma("neg")
    f = rl.character("exp", lam=1.0).fn
    ev, od = even_part(f, neg), odd_part(f, neg)
    for x in rl.carrier.elements:
        assert abs(ev(x) - cmath.cos(x)) < 1e-12
        assert abs(od(x) - 1j * cmath.sin(x)) < 1e-12


@given(st.lists(complex_values, min_size=3, max_size=3),
       st.lists(complex_values, min_size=3, max_size=3),
       complex_values, complex_values)
def test_star_linearity_and_decomposition(fv, gv, a, b):
    fx = get_fixture("c3")
    sig = fx.sigma("inv")
    f = ScalarFunction(fx.carrier, values=fv)
    g = ScalarFunction(fx.carrier, values=gv)
    lin = star(linear_combination([(a, f), (b, g)]), sig)
    direct = linear_combination([(a, star(f, sig)), (b, star(g, sig))])
    assert lin.max_diff(direct) < 1e-9
    recomposed = even_part(f, sig) + odd_part(f, sig)
    assert recomposed.max_diff(f) < 1e-9
    # even part of an odd part vanishes
    assert even_part(odd_part(f, sig), sig).is_zero(tol=1e-9)
    # even/odd parts are sigma-even / sigma-odd pointwise
    ev, od = even_part(f, sig), odd_part(f, sig)
    for x in fx.carrier.elements:
        assert abs(ev(x) - ev(sig(x))) < 1e-9
        assert abs(od(x) + od(sig(x))) < 1e-9


# ---------------------------------------------------------------------------
# multiplicative / additive validation
# ---------------------------------------------------------------------------


def test_zero_function_is_multiplicative(finite_fixture):
    s = finite_fixture.carrier
    assert is_multiplicative(s, ScalarFunction(s, values=[0] * s.order), tol=0)


def test_parity_character_on_naturals():
    nat = get_fixture("naturals-from-2", window=60)
    assert is_multiplicative(nat.carrier, nat.characters["parity"], tol=0)


def test_five_adic_count_is_additive_on_odds():
    nat = get_fixture("naturals-from-2", window=60)
    odds = [x for x in nat.carrier.elements if x % 2]
    assert is_additive(nat.carrier, odds, nat.additive_rules["five-adic"], tol=0)


def test_additive_basis_trivial_on_finite(finite_fixture):
    # on a finite carrier x^(i+p) = x^i forces p*A(x) = 0, so A = 0
    assert additive_basis(finite_fixture.carrier) == []
    s = finite_fixture.carrier
    for chi in enumerate_multiplicative(s):
        if chi.is_zero:
            continue
        sub = [x for x in s.elements if not values_equal(chi(x), 0)]
        assert additive_basis(s, sub) == []


# ---------------------------------------------------------------------------
# character enumeration
# ---------------------------------------------------------------------------


def _bool_mult_oracle():
    """Independent brute force over candidate values {0, +-1, +-i}."""
    s = get_fixture("bool-mult").carrier
    good = []
    for v0, v1 in itertools.product([0, 1, -1, 1j, -1j], repeat=2):
        vals = (v0, v1)
        if all(
            abs(vals[s.compose(x, y)] - vals[x] * vals[y]) < 1e-12
            for x in (0, 1)
            for y in (0, 1)
        ):
            good.append(vals)
    return sorted(good, key=lambda v: (v[0].real if isinstance(v[0], complex) else v[0],
                                       v[1].real if isinstance(v[1], complex) else v[1]))


def test_enumerate_bool_mult_matches_oracle():
    oracle = _bool_mult_oracle()
    assert len(oracle) == 3  # (0,0), (0,1), (1,1); (1,0) fails chi(0)=chi(0)chi(1)
    chars = enumerate_multiplicative(get_fixture("bool-mult").carrier)
    got = sorted(
        (round(complex(c(0)).real), round(complex(c(1)).real)) for c in chars
    )
    assert got == [(0, 0), (0, 1), (1, 1)]


def test_enumerate_c2():
    chars = enumerate_multiplicative(get_fixture("c2").carrier)
    assert len(chars) == 3
    values = {tuple(complex(c(x)) for x in (0, 1)) for c in chars}
    assert values == {(0j, 0j), (1 + 0j, 1 + 0j), (1 + 0j, -1 + 0j)}


def test_enumerate_c3():
    chars = enumerate_multiplicative(get_fixture("c3").carrier)
    assert len(chars) == 4
    w = cmath.exp(2j * cmath.pi / 3)
    nonzero = [c for c in chars if not c.is_zero]
    got = {tuple(complex(c(x)) for x in (0, 1, 2)) for c in nonzero}
    expect = {(1, 1, 1), (1, w, w * w), (1, w * w, w)}
    assert all(
        any(max(abs(a - b) for a, b in zip(g, e)) < 1e-12 for e in expect)
        for g in got
    )


def test_enumerated_characters_exactly_multiplicative(finite_fixture):
    for c in enumerate_multiplicative(finite_fixture.carrier):
        assert is_multiplicative(finite_fixture.carrier, c, tol=0)


def test_enumeration_canonical_order_deterministic(finite_fixture):
    a = enumerate_multiplicative(finite_fixture.carrier)
    b = enumerate_multiplicative(finite_fixture.carrier)
    assert [c.phases for c in a] == [c.phases for c in b]


def test_enumeration_bound():
    from coslaw.semigroups import FiniteSemigroup

    big = FiniteSemigroup(cayley=tuple(tuple(0 for _ in range(7)) for _ in range(7)))
    with pytest.raises(ValueError, match="bound"):
        enumerate_multiplicative(big)


# ---------------------------------------------------------------------------
# null sets
# ---------------------------------------------------------------------------


def test_null_sets_nowhere_zero_character():
    fx = get_fixture("c3")
    ns = null_sets(fx.carrier, fx.sigma("id"), fx.characters["chi1"])
    assert ns.i_chi == frozenset() and ns.p_chi == frozenset()
    assert ns.certified == "exact"


def test_null_sets_bool_mult():
    fx = get_fixture("bool-mult")
    ns = null_sets(fx.carrier, fx.sigma("id"), fx.characters["chi1"])
    assert ns.i_chi == {0} and ns.i_chi_sq == {0} and ns.p_chi == frozenset()


def test_null_sets_naturals_parity():
    nat = get_fixture("naturals-from-2", window=50)
    ns = null_sets(nat.carrier, nat.sigma("id"), nat.characters["parity"])
    assert ns.i_chi == frozenset(range(2, 51, 2))
    assert ns.p_chi == frozenset(x for x in range(2, 51) if x % 4 == 2)
    assert ns.certified == "window"


def test_null_sets_reject_zero_character():
    fx = get_fixture("c2")
    with pytest.raises(ValueError, match="non-zero"):
        null_sets(fx.carrier, fx.sigma("id"), fx.characters["chi0"])


def test_pchi_lemma_naturals():
    nat = get_fixture("naturals-from-2", window=50)
    rep = check_pchi_lemma(nat.carrier, nat.sigma("id"), nat.characters["parity"])
    assert rep.ok
    # spot witness: 3 outside I, 2 in P, so 6 must be in P
    ns = null_sets(nat.carrier, nat.sigma("id"), nat.characters["parity"])
    assert 2 in ns.p_chi and 6 in ns.p_chi


@settings(deadline=None)
@given(st.sampled_from(["c2", "c3", "leftzero2", "null3", "bool-mult"]))
def test_pchi_lemma_exhaustive_on_finite(name):
    fx = get_fixture(name)
    for sigma in fx.sigmas:
        for chi in enumerate_multiplicative(fx.carrier):
            if chi.is_zero:
                continue
            assert check_pchi_lemma(fx.carrier, sigma, chi).ok
