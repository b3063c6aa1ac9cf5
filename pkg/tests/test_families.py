"""Family constructors: closed forms, invariants, and descriptor validation."""

import cmath
from fractions import Fraction

import pytest

from coslaw.analysis import residual
from coslaw.exactnum import Cyc
from coslaw.families import (
    ConditionViolation,
    FamilyDescriptor,
    HSpec,
    InvalidDescriptor,
    build_h,
    construct,
    function_vanishing_on_products,
    sqrt_branch,
)
from coslaw.fixtures import get_fixture
from coslaw.functions import ScalarFunction, is_even, star
from coslaw.semigroups import pairs

F = Fraction


# ---------------------------------------------------------------------------
# sqrt branch
# ---------------------------------------------------------------------------


def test_sqrt_branch_basics():
    assert sqrt_branch(1, 1) == 1
    assert sqrt_branch(0, 1) == 0 and sqrt_branch(0, -1) == 0
    assert sqrt_branch(-1, 1) == Cyc.rational(0, 1)  # principal: +i
    assert sqrt_branch(-1.0, 1) == 1j
    assert sqrt_branch(F(9, 4), -1) == F(-3, 2)
    w = sqrt_branch(2.0, 1)
    assert abs(w - cmath.sqrt(2)) < 1e-15
    with pytest.raises(ValueError):
        sqrt_branch(1, 2)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def test_family1_any_nonzero_f(finite_fixture):
    s = finite_fixture.carrier
    f = ScalarFunction(s, values=[k + 1 for k in range(s.order)])
    for alpha in (1, -1):
        pair = construct(s, finite_fixture.sigma(), FamilyDescriptor(1, alpha), free_f=f)
        rep = residual(s, finite_fixture.sigma(), alpha, pair.g, pair.f)
        assert rep.mode == "exact" and rep.max_residual == 0.0
        assert pair.g.equal_to(f.scale(alpha))


def test_family1_rejects_bad_alpha():
    fx = get_fixture("c2")
    f = ScalarFunction(fx.carrier, values=[1, 1])
    with pytest.raises(InvalidDescriptor, match="alpha"):
        construct(fx.carrier, fx.sigma(), FamilyDescriptor(1, 2), free_f=f)


def test_family4_one_element(one_element):
    s, sig = one_element
    from coslaw.functions import enumerate_multiplicative

    chi = enumerate_multiplicative(s)[1]
    q, alpha = F(3, 4), 0  # 1 + q^2 = 25/16, an exact square
    for branch in (1, -1):
        d = FamilyDescriptor(4, alpha, q=q, branch=branch, chi=chi)
        pair = construct(s, sig, d)
        assert pair.f(0) == F(3, 8)  # (q + alpha)/2
        assert pair.g(0) == (1 + branch * F(5, 4)) * F(1, 2)
        assert residual(s, sig, alpha, pair.g, pair.f).max_residual == 0.0


def test_family8_real_line_closed_form():
    rl = get_fixture("real-line")
    neg = rl.sigma("neg")
    lam, alpha = 1.0, 2
    pair = construct(rl.carrier, neg, FamilyDescriptor(8, alpha, chi=rl.character("exp", lam=lam)))
    for x in rl.carrier.elements:
        assert abs(pair.f(x) - (alpha * cmath.cos(lam * x) + 1j * cmath.sin(lam * x))) < 1e-12
        assert abs(pair.g(x) - (cmath.cos(lam * x) + 1j * alpha * cmath.sin(lam * x))) < 1e-12


def test_family8_star_identities():
    # the printed forms give f* = alpha(chi + chi*) - f and g* = (chi + chi*) - g
    fx = get_fixture("c3")
    s, sig = fx.carrier, fx.sigma("inv")
    chi = fx.characters["chi2"]
    alpha = F(1, 2)
    pair = construct(s, sig, FamilyDescriptor(8, alpha, chi=chi))
    chi_sum = chi.fn + star(chi.fn, sig)
    lhs_f = star(pair.f, sig) + pair.f
    lhs_g = star(pair.g, sig) + pair.g
    assert lhs_f.equal_to(chi_sum.scale(alpha), tol=0)
    assert lhs_g.equal_to(chi_sum, tol=0)


def test_family8_rejects_even_chi_and_bad_alpha():
    fx = get_fixture("c3")
    with pytest.raises(InvalidDescriptor, match="alpha"):
        construct(fx.carrier, fx.sigma("inv"), FamilyDescriptor(8, 1, chi=fx.characters["chi2"]))
    with pytest.raises(InvalidDescriptor, match="chi"):
        construct(fx.carrier, fx.sigma("id"), FamilyDescriptor(8, 2, chi=fx.characters["chi2"]))


def test_family5_rejects_q_at_alpha():
    fx = get_fixture("c2")
    ev = [fx.characters["chi1"], fx.characters["chi2"]]
    with pytest.raises(InvalidDescriptor, match="q"):
        construct(
            fx.carrier, fx.sigma(),
            FamilyDescriptor(5, 2, q=2, branch=1, chi1=ev[0], chi2=ev[1]),
        )


def test_family4_allows_q_at_alpha():
    # the boundary q = -alpha folds the zero solution into family 4
    fx = get_fixture("c2")
    d = FamilyDescriptor(4, F(1, 2), q=F(-1, 2), branch=-1, chi=fx.characters["chi1"])
    pair = construct(fx.carrier, fx.sigma(), d)
    assert pair.f.is_zero() and pair.g.is_zero()


def test_families_2_3_validate_vanishing():
    fx = get_fixture("null3")
    s = fx.carrier
    good = function_vanishing_on_products(s, {1: 1, 2: F(2, 3)})
    for fam, sign in ((2, 1), (3, -1)):
        pair = construct(s, fx.sigma(), FamilyDescriptor(fam, 0), free_f=good)
        assert residual(s, fx.sigma(), 0, pair.g, pair.f).max_residual == 0.0
        assert pair.f.equal_to(pair.g.scale(sign))
    bad = ScalarFunction(s, values=[1, 1, 1])  # does not vanish at z = 0
    with pytest.raises(InvalidDescriptor, match="vanish"):
        construct(s, fx.sigma(), FamilyDescriptor(2, 0), free_f=bad)
    with pytest.raises(InvalidDescriptor, match="non-zero"):
        construct(s, fx.sigma(), FamilyDescriptor(2, 0),
                  free_f=ScalarFunction(s, values=[0, 0, 0]))


def test_families_4567_produce_even_pairs():
    fx = get_fixture("c2")
    s, sig = fx.carrier, fx.sigma()
    ev = [fx.characters["chi1"], fx.characters["chi2"]]
    cases = [
        FamilyDescriptor(4, 0.5, q=1.5, branch=1, chi=ev[0]),
        FamilyDescriptor(5, 0.5, q=1.5, branch=-1, chi1=ev[0], chi2=ev[1]),
        FamilyDescriptor(6, 0.5, chi1=ev[0], chi2=ev[1]),
        FamilyDescriptor(7, 0.5, branch=1, chi=ev[0], h_spec=HSpec()),
    ]
    for d in cases:
        pair = construct(s, sig, d)
        assert is_even(pair.g, sig) and is_even(pair.f, sig)


def test_families_2_to_8_are_abelian_and_central():
    # family 1 is exempt (f is arbitrary); everything else must be abelian
    from coslaw.acceptance import family_case_matrix
    from coslaw.semigroups import is_abelian_fn, is_central

    seen = set()
    for fx, sigma, d, free, predicates, _exact in family_case_matrix():
        if d.family == 1 or not fx.carrier.is_finite:
            continue
        key = (fx.name, sigma.name, d.family)
        if key in seen:
            continue
        seen.add(key)
        pair = construct(fx.carrier, sigma, d, free_f=free, predicates=predicates)
        assert is_central(fx.carrier, pair.g) and is_central(fx.carrier, pair.f)
        assert is_abelian_fn(fx.carrier, pair.g) and is_abelian_fn(fx.carrier, pair.f)


# ---------------------------------------------------------------------------
# the piecewise sine-law solution
# ---------------------------------------------------------------------------


def test_build_h_naturals_piecewise():
    nat = get_fixture("naturals-from-2", window=60)
    s, sig = nat.carrier, nat.sigma()
    c = F(5, 3)
    h = build_h(
        s, sig, nat.characters["parity"],
        additive=nat.additive_rules["five-adic"], rho=c,
        predicates=nat.null_predicates["parity"],
    )
    assert h(15) == 1 and h(25) == 2 and h(3) == 0  # chi * (5-adic count) on odds
    assert h(4) == 0 and h(8) == 0  # 4N
    assert h(6) == c and h(58) == c  # 2N \ 4N
    chi = nat.characters["parity"]
    for x, y in pairs(s):
        xy = s.compose(x, y)
        assert h(xy) == h(x) * chi(y) + h(y) * chi(x)


def test_build_h_finite_defaults_to_zero(finite_fixture):
    # finite additive parts vanish and P_chi is empty on the built-ins
    fx = finite_fixture
    for sigma in fx.sigmas:
        for name, chi in fx.characters.items():
            if chi.is_zero or not chi.is_even(sigma):
                continue
            h = build_h(fx.carrier, sigma, chi)
            assert h.is_zero()


def test_family7_with_zero_h_degenerates():
    fx = get_fixture("bool-mult")
    s, sig = fx.carrier, fx.sigma()
    chi = fx.characters["chi1"]
    d = FamilyDescriptor(7, F(1, 3), branch=1, chi=chi, h_spec=HSpec())
    pair = construct(s, sig, d)
    assert pair.f.equal_to(chi.fn.scale(F(1, 3)))
    assert pair.g.equal_to(chi.fn)
    assert residual(s, sig, F(1, 3), pair.g, pair.f).max_residual == 0.0


def test_family7_real_line_with_additive_h():
    rl = get_fixture("real-line")
    s, sig = rl.carrier, rl.sigma("id")
    chi = rl.character("exp", lam=0.75)
    h = build_h(s, sig, chi, additive=rl.additive_rules["linear"])
    d = FamilyDescriptor(7, 0.25, branch=-1, chi=chi, h=h)
    pair = construct(s, sig, d)
    rep = residual(s, sig, 0.25, pair.g, pair.f)
    assert rep.max_residual < 1e-9


def test_build_h_rejects_asymmetric_rho():
    nat = get_fixture("naturals-from-2", window=40)
    rho = {p: p for p in range(2, 41) if p % 4 == 2}  # rho(up) != rho(p)chi(u)
    with pytest.raises(ConditionViolation):
        build_h(
            nat.carrier, nat.sigma(), nat.characters["parity"],
            additive=nat.additive_rules["five-adic"],
            rho=lambda x: x,
            predicates=nat.null_predicates["parity"],
        )


def test_construct_rejects_odd_h():
    rl = get_fixture("real-line")
    s, neg = rl.carrier, rl.sigma("neg")
    chi = rl.character("exp", lam=0)
    h_odd = ScalarFunction(s, rule=lambda x: x)  # additive but sigma-odd
    with pytest.raises(InvalidDescriptor, match="even"):
        construct(s, neg, FamilyDescriptor(7, 0.5, chi=chi, h=h_odd))
