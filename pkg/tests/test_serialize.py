"""File formats: semigroup tables, pair JSON, round trips."""

import json
from fractions import Fraction

import pytest

from coslaw.exactnum import Cyc
from coslaw.families import FamilyDescriptor, construct
from coslaw.fixtures import get_fixture
from coslaw.functions import ScalarFunction
from coslaw.serialize import (
    ParseError,
    load_pair,
    load_semigroup,
    pair_from_json,
    pair_to_json,
    save_pair,
    save_semigroup,
    scalar_from_json,
    scalar_to_json,
)

F = Fraction


def test_semigroup_file_round_trip(tmp_path):
    fx = get_fixture("c3")
    path = tmp_path / "c3.sg"
    save_semigroup(path, fx.carrier, fx.sigma("inv"))
    s, sigma = load_semigroup(path)
    assert s.cayley == fx.carrier.cayley
    assert sigma.perm == (0, 2, 1)


def test_semigroup_file_comments_and_no_sigma(tmp_path):
    path = tmp_path / "t.sg"
    path.write_text("# a comment\norder 2\n0 1  # inline comment\n1 0\n")
    s, sigma = load_semigroup(path)
    assert s.order == 2 and sigma is None


def test_load_rejects_non_associative_with_witness(tmp_path):
    path = tmp_path / "bad.sg"
    path.write_text("order 2\n1 1\n0 0\n")
    with pytest.raises(ParseError, match=r"associativity violation at \(0, 0, 0\)"):
        load_semigroup(path)


def test_load_rejects_bad_sigma_with_witness(tmp_path):
    # the swap is not an automorphism of bool-mult
    path = tmp_path / "bad_sigma.sg"
    path.write_text("order 2\n0 0\n0 1\nsigma 1 0\n")
    with pytest.raises(ParseError, match="sigma fails"):
        load_semigroup(path)


def test_parse_errors_carry_line_numbers(tmp_path):
    path = tmp_path / "short_row.sg"
    path.write_text("order 2\n0\n")
    with pytest.raises(ParseError) as err:
        load_semigroup(path)
    assert err.value.line == 2


def test_scalar_json_exact_round_trip():
    v = Cyc.rational(F(1, 3), F(-2, 7))
    out = scalar_to_json(v)
    assert out == ["1/3", "-2/7"]
    back = scalar_from_json(out)
    assert isinstance(back, Cyc) and back == v
    assert scalar_from_json(scalar_to_json(F(5, 2))) == F(5, 2)
    assert scalar_from_json(scalar_to_json(3)) == 3


def test_scalar_json_float_round_trip():
    z = 0.1 + 0.25j
    assert scalar_from_json(scalar_to_json(z)) == z


def test_pair_json_finite_exact_round_trip():
    fx = get_fixture("c2")
    s, sig = fx.carrier, fx.sigma()
    d = FamilyDescriptor(5, 0, q=F(3, 4), branch=1,
                         chi1=fx.characters["chi1"], chi2=fx.characters["chi2"])
    pair = construct(s, sig, d)
    data = pair_to_json(pair, "c2", "id")
    fx2, sig2, pair2 = pair_from_json(json.loads(json.dumps(data)))
    assert pair2.g.equal_to(pair.g, tol=0)
    assert pair2.f.equal_to(pair.f, tol=0)


def test_pair_json_real_line_round_trip(tmp_path):
    rl = get_fixture("real-line")
    neg = rl.sigma("neg")
    pair = construct(rl.carrier, neg, FamilyDescriptor(8, 2, chi=rl.character("exp", lam=1.0)))
    path = tmp_path / "pair.json"
    save_pair(path, pair, "real-line", "neg")
    fx2, sig2, pair2 = load_pair(path)
    assert sig2.name == "neg"
    assert pair2.g.max_diff(pair.g) < 1e-15
    assert pair2.f.max_diff(pair.f) < 1e-15


def test_function_without_spec_not_serializable():
    rl = get_fixture("real-line")
    f = ScalarFunction(rl.carrier, rule=lambda x: x)
    from coslaw.serialize import function_to_json

    with pytest.raises(ValueError, match="spec"):
        function_to_json(f)


def test_naturals_h_pair_round_trip(tmp_path):
    from coslaw.families import HSpec

    nat = get_fixture("naturals-from-2", window=40)
    s, sig = nat.carrier, nat.sigma()
    d = FamilyDescriptor(
        7, 0.5, branch=1, chi=nat.characters["parity"],
        h_spec=HSpec(
            additive=nat.additive_rules["five-adic"], rho=0.25,
            spec={"rule": "h-piecewise", "c": [0.25, 0]},
        ),
    )
    pair = construct(s, sig, d, predicates=nat.null_predicates["parity"])
    path = tmp_path / "h_pair.json"
    save_pair(path, pair, "naturals-from-2", "id", window=40)
    fx2, sig2, pair2 = load_pair(path)
    assert pair2.g.max_diff(pair.g) < 1e-12
    assert pair2.f.max_diff(pair.f) < 1e-12
