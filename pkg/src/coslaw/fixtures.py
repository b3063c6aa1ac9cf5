"""Built-in carriers: small finite semigroups and rule-defined structures.

Finite fixtures: c2, c3 (cyclic groups), leftzero2 (xy = x), null3 (all
products equal an absorbing element z) and bool-mult ({0,1} under
multiplication).

Rule-defined fixtures:

* real-line — (R, +) sampled on a uniform grid over [-pi, pi]; reflection
  x -> -x; characters x -> e^(i*lambda*x).
* heisenberg — upper unitriangular 3x3 integer matrices as coordinate
  triples (x, y, z) with (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y');
  reflection (x,y,z) -> (-x,-y,z); characters X -> e^(a*x+b*y), evaluated
  exactly as Laurent monomials in e when a, b are integers.
* naturals-from-2 — (N \\ {1}, *) on the window [2, upper]; the parity
  character (1 on odds, 0 on evens) has I_chi = evens, P_chi = 2N \\ 4N,
  and the 5-adic valuation is additive on the odd sub-carrier.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import pi
from typing import Callable

from .exactnum import ExpPoly
from .functions import (
    AdditiveFunction,
    MultiplicativeFunction,
    ScalarFunction,
    enumerate_multiplicative,
)
from .semigroups import (
    FiniteSemigroup,
    InvolutiveAutomorphism,
    ProceduralSemigroup,
    Semigroup,
    enumerate_involutive_automorphisms,
)

FINITE_TABLES: dict[str, tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]] = {
    "c2": (((0, 1), (1, 0)), ("e", "g")),
    "c3": (((0, 1, 2), (1, 2, 0), (2, 0, 1)), ("e", "g", "g2")),
    "leftzero2": (((0, 0), (1, 1)), ("a", "b")),
    "null3": (((0, 0, 0), (0, 0, 0), (0, 0, 0)), ("z", "a", "b")),
    "bool-mult": (((0, 0), (0, 1)), ("0", "1")),
}

FIXTURE_NAMES = tuple(FINITE_TABLES) + ("real-line", "heisenberg", "naturals-from-2")

_SIGMA_ALIASES = {
    ("c3", (0, 2, 1)): "inv",
    ("leftzero2", (1, 0)): "swap",
    ("null3", (0, 2, 1)): "swap",
}


@dataclass(frozen=True)
class NullPredicates:
    """Exact membership rules for I_chi, I_chi^2, P_chi beyond the window."""

    in_i: Callable = field(compare=False)
    in_i2: Callable = field(compare=False)
    in_p: Callable = field(compare=False)


@dataclass(frozen=True)
class Fixture:
    """A named carrier with its involutive reflections and named functions."""

    name: str
    carrier: Semigroup
    sigmas: tuple[InvolutiveAutomorphism, ...]
    characters: dict[str, MultiplicativeFunction] = field(default_factory=dict)
    null_predicates: dict[str, NullPredicates] = field(default_factory=dict)
    additive_rules: dict[str, AdditiveFunction] = field(default_factory=dict)

    def sigma(self, name: str | None = None) -> InvolutiveAutomorphism:
        if name is None:
            return self.sigmas[0]
        for s in self.sigmas:
            if s.name == name:
                return s
        raise KeyError(f"fixture {self.name} has no sigma named {name!r}")

    def character(self, name: str, **params) -> MultiplicativeFunction:
        if name in self.characters:
            return self.characters[name]
        if name == "exp":
            return _exp_character(self, **params)
        raise KeyError(f"fixture {self.name} has no character named {name!r}")

    def function_from_spec(self, spec) -> ScalarFunction:
        return function_from_spec(self, spec)


def _finite_fixture(name: str) -> Fixture:
    table, labels = FINITE_TABLES[name]
    s = FiniteSemigroup(cayley=table, labels=labels)
    sigmas = []
    for a in enumerate_involutive_automorphisms(s):
        alias = _SIGMA_ALIASES.get((name, a.perm))
        sigmas.append(InvolutiveAutomorphism(alias, perm=a.perm) if alias else a)
    chars = {c.name: c for c in enumerate_multiplicative(s)}
    return Fixture(name=name, carrier=s, sigmas=tuple(sigmas), characters=chars)


# ---------------------------------------------------------------------------
# real line
# ---------------------------------------------------------------------------


def _real_line(points: int = 64) -> Fixture:
    grid = tuple(-pi + 2 * pi * k / (points - 1) for k in range(points))
    carrier = ProceduralSemigroup(
        name="real-line",
        window=grid,
        compose_rule=lambda x, y: x + y,
        contains_rule=lambda x: isinstance(x, (int, float)) and not isinstance(x, bool),
        eq_rule=lambda a, b: abs(a - b) <= 1e-12,  # float addition is inexact
    )
    sig_neg = InvolutiveAutomorphism("neg", rule=lambda x: -x)
    sig_id = InvolutiveAutomorphism("id", rule=lambda x: x)
    return Fixture(
        name="real-line",
        carrier=carrier,
        sigmas=(sig_neg, sig_id),
        additive_rules={
            "linear": AdditiveFunction(
                carrier, frozenset(grid), lambda x: x
            )
        },
    )


# ---------------------------------------------------------------------------
# Heisenberg coordinate triples
# ---------------------------------------------------------------------------


def _heis_compose(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])


def _heis_contains(x) -> bool:
    return (
        isinstance(x, tuple)
        and len(x) == 3
        and all(
            (type(c) is int or isinstance(c, (int, Fraction))) and not isinstance(c, bool)
            for c in x
        )
    )


def _heisenberg(bound: int = 3) -> Fixture:
    window = tuple(sorted(product(range(-bound, bound + 1), repeat=3)))
    carrier = ProceduralSemigroup(
        name="heisenberg",
        window=window,
        compose_rule=_heis_compose,
        contains_rule=_heis_contains,
    )
    sig_flip = InvolutiveAutomorphism("flip", rule=lambda t: (-t[0], -t[1], t[2]))
    sig_id = InvolutiveAutomorphism("id", rule=lambda t: t)
    return Fixture(
        name="heisenberg",
        carrier=carrier,
        sigmas=(sig_flip, sig_id),
        additive_rules={
            "coords": AdditiveFunction(
                carrier, frozenset(window), lambda t: t[0] + t[1]
            )
        },
    )


# ---------------------------------------------------------------------------
# naturals without 1 under multiplication
# ---------------------------------------------------------------------------


def _five_adic(x: int) -> int:
    k = 0
    while x % 5 == 0:
        x //= 5
        k += 1
    return k


def _naturals(upper: int = 65) -> Fixture:
    window = tuple(range(2, upper + 1))
    carrier = ProceduralSemigroup(
        name="naturals-from-2",
        window=window,
        compose_rule=lambda x, y: x * y,
        contains_rule=lambda x: isinstance(x, int) and not isinstance(x, bool) and x >= 2,
    )
    sig_id = InvolutiveAutomorphism("id", rule=lambda x: x)
    parity = MultiplicativeFunction(
        fn=ScalarFunction(carrier, rule=lambda x: x % 2, spec={"rule": "parity"}),
        name="parity",
    )
    one = MultiplicativeFunction(
        fn=ScalarFunction(carrier, rule=lambda x: 1, spec={"rule": "one"}),
        name="one",
    )
    odds = frozenset(x for x in window if x % 2)
    return Fixture(
        name="naturals-from-2",
        carrier=carrier,
        sigmas=(sig_id,),
        characters={"parity": parity, "one": one},
        null_predicates={
            "parity": NullPredicates(
                in_i=lambda x: x % 2 == 0,
                in_i2=lambda x: x % 4 == 0,
                in_p=lambda x: x % 4 == 2,
            )
        },
        additive_rules={
            "five-adic": AdditiveFunction(carrier, odds, _five_adic)
        },
    )


# ---------------------------------------------------------------------------
# exponential characters on the two group fixtures
# ---------------------------------------------------------------------------


def _exp_character(fx: Fixture, **params) -> MultiplicativeFunction:
    if fx.name == "real-line":
        lam = complex(params["lam"])
        rule = lambda x: cmath.exp(1j * lam * x)  # noqa: E731
        spec = {"rule": "exp", "lambda": [lam.real, lam.imag]}
        return MultiplicativeFunction(
            fn=ScalarFunction(fx.carrier, rule=rule, spec=spec), name="exp"
        )
    if fx.name == "heisenberg":
        a, b = params["a"], params["b"]
        if isinstance(a, int) and isinstance(b, int):
            rule = lambda t: ExpPoly.exp(a * t[0] + b * t[1])  # noqa: E731
            spec = {"rule": "exp", "a": [float(a), 0.0], "b": [float(b), 0.0]}
        else:
            a, b = complex(a), complex(b)
            rule = lambda t: cmath.exp(a * t[0] + b * t[1])  # noqa: E731
            spec = {"rule": "exp", "a": [a.real, a.imag], "b": [b.real, b.imag]}
        return MultiplicativeFunction(
            fn=ScalarFunction(fx.carrier, rule=rule, spec=spec), name="exp"
        )
    raise KeyError(f"fixture {fx.name} has no exponential character family")


# ---------------------------------------------------------------------------
# registry and function deserialization
# ---------------------------------------------------------------------------


def get_fixture(name: str, window: int | None = None) -> Fixture:
    """Resolve a fixture name; `window` is points (real-line), coordinate
    bound (heisenberg) or upper end (naturals-from-2)."""
    if name in FINITE_TABLES:
        return _finite_fixture(name)
    if name == "real-line":
        return _real_line(window or 64)
    if name == "heisenberg":
        return _heisenberg(window or 3)
    if name == "naturals-from-2":
        return _naturals(window or 65)
    raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")


def function_from_spec(fx: Fixture, spec) -> ScalarFunction:
    """Rebuild a function from its serialized form (dense values or rule tree)."""
    if isinstance(spec, list):
        return ScalarFunction(fx.carrier, values=[complex(re, im) for re, im in spec])
    rule = spec["rule"]
    if rule == "const":
        re, im = spec["value"]
        c = complex(re, im)
        return ScalarFunction(fx.carrier, rule=lambda x: c, spec=spec)
    if rule == "combo":
        out = None
        for term in spec["terms"]:
            coef = complex(*term["coef"])
            part = function_from_spec(fx, term["fn"]).scale(coef)
            out = part if out is None else out + part
        out.spec = spec
        return out
    if rule == "star":
        from .functions import star

        inner = function_from_spec(fx, spec["fn"])
        return star(inner, fx.sigma(spec["sigma"]))
    if rule == "exp":
        if fx.name == "real-line":
            return _exp_character(fx, lam=complex(*spec["lambda"])).fn
        a, b = complex(*spec["a"]), complex(*spec["b"])
        if a.imag == 0 and b.imag == 0 and a.real.is_integer() and b.real.is_integer():
            return _exp_character(fx, a=int(a.real), b=int(b.real)).fn
        return _exp_character(fx, a=a, b=b).fn
    if rule == "parity":
        return fx.characters["parity"].fn
    if rule == "one":
        return fx.characters["one"].fn
    if rule == "five-adic":
        return ScalarFunction(fx.carrier, rule=_five_adic, spec=spec)
    if rule == "h-piecewise":
        c = complex(*spec["c"])
        preds = fx.null_predicates["parity"]

        def h(x):
            if not preds.in_i(x):
                return _five_adic(x)
            return c if preds.in_p(x) else 0

        return ScalarFunction(fx.carrier, rule=h, spec=spec)
    raise ValueError(f"unknown function rule {rule!r}")
