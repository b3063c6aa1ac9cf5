"""Constructors for the eight solution families of the target equation

    g(x sigma(y)) = g(x) g(y) - f(x) f(y) + alpha f(x sigma(y)).

Family summary (chi, chi1, chi2 non-zero multiplicative; "even" means
invariant under composition with sigma; w = sqrt(1 + q^2 - alpha^2)):

  1  alpha = +-1,  f free non-zero,  g = alpha f
  2  alpha != 1,   f = g != 0,       g = 0 on S^2
  3  alpha != -1,  f = -g != 0,      g = 0 on S^2
  4  f = (q+alpha) chi/2,            g = (1 +- w) chi/2          (chi even)
  5  f = alpha(chi1+chi2)/2 + q(chi1-chi2)/2,
     g = (chi1+chi2)/2 +- w (chi1-chi2)/2   (chi1 != chi2 even, q != +-alpha)
  6  alpha != 0,  f = alpha chi1,    g = chi2   (chi1 != chi2 even)
  7  f = alpha chi + h,  g = chi +- h,  h an even solution of the sine
     addition law h(xy) = h(x)chi(y) + h(y)chi(x); every such h is
     chi*A on S \\ I_chi, 0 on I_chi \\ P_chi and rho on P_chi, subject to
     the translate conditions (I) and (II) enforced by ``build_h``
  8  alpha != +-1,  f = (1+alpha)/2 chi - (1-alpha)/2 chi*,
     g = (1+alpha)/2 chi + (1-alpha)/2 chi*   (chi != chi*)

Constructed pairs have residual exactly zero when all inputs are exact.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exactnum import exact_sqrt, is_exact, simplify_scalar, values_equal
from .functions import (
    AdditiveFunction,
    MultiplicativeFunction,
    NullSets,
    ScalarFunction,
    is_additive,
    is_even,
    linear_combination,
    null_sets,
)
from .semigroups import InvolutiveAutomorphism, Semigroup, pairs

DEFAULT_TOL = 1e-9


class InvalidDescriptor(ValueError):
    """A family descriptor violates its invariants."""


class ConditionViolation(ValueError):
    """The piecewise sine-law data violates condition (I) or (II) or parity."""


def _eq(a, b) -> bool:
    if is_exact(a) and is_exact(b):
        return values_equal(a, b)
    return abs(complex(a) - complex(b)) <= 1e-12


HALF = Fraction(1, 2)


def sqrt_branch(z, branch: int = 1):
    """branch * principal sqrt(z); Re >= 0, and Im >= 0 when Re == 0.

    Stays exact for rational complex z with a rational complex root.
    """
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    if is_exact(z):
        w = exact_sqrt(z)
        if w is not None:
            parts = w.rational_parts()
            if parts is not None and parts[1] == 0:
                w = parts[0]  # plain rational mixes with every exact type
            return -w if branch == -1 else w
    w = cmath.sqrt(complex(z))
    if w.real == 0 and w.imag < 0:
        w = -w
    return branch * w


@dataclass(frozen=True)
class HSpec:
    """Data for the piecewise sine-law solution: additive part and rho values."""

    additive: AdditiveFunction | None = None
    rho: object = None  # dict element -> value | callable | constant scalar
    spec: dict | None = None  # serializable rule for the assembled h, if any


@dataclass(frozen=True)
class FamilyDescriptor:
    family: int
    alpha: object
    q: object = None
    branch: int = 1
    chi: MultiplicativeFunction | None = None
    chi1: MultiplicativeFunction | None = None
    chi2: MultiplicativeFunction | None = None
    h: ScalarFunction | None = field(default=None, compare=False)
    h_spec: HSpec | None = field(default=None, compare=False)
    free: ScalarFunction | None = field(default=None, compare=False)

    def as_params(self) -> dict:
        """JSON-able parameter summary."""
        out: dict = {"family_tag": self.family, "alpha": _pair(self.alpha)}
        if self.q is not None:
            out["q"] = _pair(self.q)
        if self.family in (4, 5, 7):
            out["branch"] = self.branch
        for key in ("chi", "chi1", "chi2"):
            c = getattr(self, key)
            if c is not None:
                out[key] = c.name or "anonymous"
        return out


def _pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True)
class SolutionPair:
    """A concrete (g, f, alpha) triple, optionally with its family provenance."""

    g: ScalarFunction
    f: ScalarFunction
    alpha: object
    provenance: FamilyDescriptor | None = None


def function_vanishing_on_products(
    s: Semigroup, support: dict
) -> ScalarFunction:
    """Arbitrary values on the given support, zero elsewhere (and beyond the
    window); the support must avoid S^2 for families 2/3."""
    if s.is_finite:
        values = [support.get(x, 0) for x in s.elements]
        return ScalarFunction(s, values=values)
    table = dict(support)
    spec = {"rule": "support", "points": [[x, _pair(v)] for x, v in table.items()]}
    return ScalarFunction(s, rule=lambda x: table.get(x, 0), spec=spec)


# ---------------------------------------------------------------------------
# the piecewise sine-law solution of family 7
# ---------------------------------------------------------------------------


def build_h(
    s: Semigroup,
    sigma: InvolutiveAutomorphism,
    chi: MultiplicativeFunction,
    additive: AdditiveFunction | None = None,
    rho=None,
    predicates=None,
    tol: float = DEFAULT_TOL,
) -> ScalarFunction:
    """Assemble h = chi*A on S \\ I_chi, 0 on I_chi \\ P_chi, rho on P_chi.

    Validates the parity requirements A o sigma = A and rho o sigma = rho,
    the translate condition (I) rho(up) = rho(p)chi(u) (and its right/two
    sided variants), condition (II) h(xy) = h(yx) = 0 for x in
    I_chi \\ P_chi and y outside I_chi, and finally that h satisfies the
    sine addition law on all window pairs.  Raises ConditionViolation
    otherwise.

    `predicates` supplies exact membership rules for evaluation beyond the
    window of a procedural carrier (fixtures ship them where the null sets
    are non-trivial).
    """
    ns = null_sets(s, sigma, chi, tol)
    in_i, in_p = _membership(s, ns, predicates)
    rho_fn = _as_rho(rho)

    def h_rule(x):
        if not in_i(x):
            a = additive(x) if additive is not None else 0
            return chi(x) * a
        if in_p(x):
            return rho_fn(x)
        return 0

    elems = list(s.elements)
    units = [u for u in elems if u not in ns.i_chi]

    if additive is not None:
        if not is_additive(s, units, additive, tol):
            raise ConditionViolation("additive part fails A(xy) = A(x) + A(y)")
        for u in units:
            if not values_equal(additive(sigma(u)), additive(u), tol):
                raise ConditionViolation(f"additive part is not sigma-symmetric at {u}")
    for p in ns.p_chi:
        if not values_equal(rho_fn(sigma(p)), rho_fn(p), tol):
            raise ConditionViolation(f"rho is not sigma-symmetric at {p}")

    _check_condition_i(s, ns, chi, rho_fn, in_p, units, tol)
    _check_condition_ii(s, ns, h_rule, units, tol)

    for x, y in pairs(s):
        xy = s.compose(x, y)
        lhs = h_rule(xy)
        rhs = h_rule(x) * chi(y) + h_rule(y) * chi(x)
        if not values_equal(lhs, rhs, tol):
            raise ConditionViolation(
                f"sine addition law fails at ({x}, {y}): {lhs!r} != {rhs!r}"
            )

    if s.is_finite:
        return ScalarFunction(s, values=[h_rule(x) for x in elems])
    return ScalarFunction(s, rule=h_rule)


def _membership(s: Semigroup, ns: NullSets, predicates) -> tuple[Callable, Callable]:
    if s.is_finite:
        return (lambda x: x in ns.i_chi), (lambda x: x in ns.p_chi)
    if predicates is not None:
        return predicates.in_i, predicates.in_p
    if not ns.i_chi:
        # chi has no window zeros; treat I_chi as empty everywhere
        return (lambda x: False), (lambda x: False)
    raise ValueError(
        "procedural carrier with non-trivial null sets needs membership predicates"
    )


def _as_rho(rho) -> Callable:
    if rho is None:
        return lambda x: 0
    if callable(rho):
        return rho
    if isinstance(rho, dict):
        return lambda x: rho[x]
    return lambda x: rho  # constant


def _check_condition_i(s, ns, chi, rho_fn, in_p, units, tol):
    in_window = set(s.elements)
    for p in ns.p_chi:
        rp = rho_fn(p)
        chi_u = {u: chi(u) for u in units}
        for u in units:
            up = s.compose(u, p)
            if (s.is_finite or up in in_window) and in_p(up):
                if not values_equal(rho_fn(up), rp * chi_u[u], tol):
                    raise ConditionViolation(f"condition (I) fails at up = {u}*{p}")
            pv = s.compose(p, u)
            if (s.is_finite or pv in in_window) and in_p(pv):
                if not values_equal(rho_fn(pv), rp * chi_u[u], tol):
                    raise ConditionViolation(f"condition (I) fails at pv = {p}*{u}")
        for u, v in itertools.product(units, repeat=2):
            upv = s.compose(s.compose(u, p), v)
            if (s.is_finite or upv in in_window) and in_p(upv):
                if not values_equal(rho_fn(upv), rp * chi_u[u] * chi_u[v], tol):
                    raise ConditionViolation(
                        f"condition (I) fails at upv = {u}*{p}*{v}"
                    )


def _check_condition_ii(s, ns, h_rule, units, tol):
    for x in ns.i_chi - ns.p_chi:
        for y in units:
            for prod in (s.compose(x, y), s.compose(y, x)):
                if not values_equal(h_rule(prod), 0, tol):
                    raise ConditionViolation(
                        f"condition (II) fails: h({x}*{y} side) != 0"
                    )


# ---------------------------------------------------------------------------
# family constructors
# ---------------------------------------------------------------------------


def construct(
    s: Semigroup,
    sigma: InvolutiveAutomorphism,
    d: FamilyDescriptor,
    free_f: ScalarFunction | None = None,
    predicates=None,
    tol: float = DEFAULT_TOL,
) -> SolutionPair:
    """Build the (g, f) pair a descriptor denotes, validating its invariants."""
    if d.family not in range(1, 9):
        raise InvalidDescriptor(f"unknown family tag {d.family}")
    free = free_f if free_f is not None else d.free
    if free is not None and d.family not in (1, 2, 3):
        raise InvalidDescriptor(
            f"family {d.family} is fully determined; free functions belong to 1-3"
        )
    builder = _BUILDERS[d.family]
    g, f = builder(s, sigma, d, free, predicates, tol)
    prov = d if d.free is not None or free is None else _with_free(d, free)
    return SolutionPair(g=g, f=f, alpha=d.alpha, provenance=prov)


def _with_free(d: FamilyDescriptor, free: ScalarFunction) -> FamilyDescriptor:
    return FamilyDescriptor(
        family=d.family, alpha=d.alpha, q=d.q, branch=d.branch, chi=d.chi,
        chi1=d.chi1, chi2=d.chi2, h=d.h, h_spec=d.h_spec, free=free,
    )


def _require_nonzero_fn(fn: ScalarFunction | None, what: str, tol: float) -> ScalarFunction:
    if fn is None:
        raise InvalidDescriptor(f"{what} requires a free function argument")
    if fn.is_zero(tol):
        raise InvalidDescriptor(f"{what} must be non-zero")
    return fn


def _require_even(chi: MultiplicativeFunction, sigma, what: str):
    if chi is None or chi.is_zero:
        raise InvalidDescriptor(f"{what} requires a non-zero multiplicative function")
    if not chi.is_even(sigma):
        raise InvalidDescriptor(f"{what} requires a sigma-even multiplicative function")


def _check_vanishing_on_products(s: Semigroup, g: ScalarFunction, tol: float):
    # test on every pairwise product, including products outside the window
    for x, y in pairs(s):
        if not values_equal(g(s.compose(x, y)), 0, tol):
            raise InvalidDescriptor(
                f"function does not vanish on S^2 (violated at {x}*{y})"
            )


def _family1(s, sigma, d, free, predicates, tol):
    if not (_eq(d.alpha, 1) or _eq(d.alpha, -1)):
        raise InvalidDescriptor("family 1 requires alpha = +-1")
    f = _require_nonzero_fn(free, "family 1", tol)
    return f.scale(d.alpha), f


def _family2(s, sigma, d, free, predicates, tol):
    if _eq(d.alpha, 1):
        raise InvalidDescriptor("family 2 requires alpha != 1")
    g = _require_nonzero_fn(free, "family 2", tol)
    _check_vanishing_on_products(s, g, tol)
    return g, g


def _family3(s, sigma, d, free, predicates, tol):
    if _eq(d.alpha, -1):
        raise InvalidDescriptor("family 3 requires alpha != -1")
    g = _require_nonzero_fn(free, "family 3", tol)
    _check_vanishing_on_products(s, g, tol)
    return g, -g


def _family4(s, sigma, d, free, predicates, tol):
    _require_even(d.chi, sigma, "family 4")
    if d.q is None:
        raise InvalidDescriptor("family 4 requires the constant q")
    chi = d.chi.fn
    w = sqrt_branch(1 + d.q * d.q - d.alpha * d.alpha, d.branch)
    f = chi.scale(simplify_scalar((d.q + d.alpha) * HALF))
    g = chi.scale(simplify_scalar((1 + w) * HALF))
    return g, f


def _family5(s, sigma, d, free, predicates, tol):
    _require_even(d.chi1, sigma, "family 5")
    _require_even(d.chi2, sigma, "family 5")
    if d.chi1.same_as(d.chi2):
        raise InvalidDescriptor("family 5 requires two different multiplicative functions")
    if d.q is None or _eq(d.q, d.alpha) or _eq(d.q, -d.alpha):
        raise InvalidDescriptor("family 5 requires a constant q outside {+-alpha}")
    w = sqrt_branch(1 + d.q * d.q - d.alpha * d.alpha, d.branch)
    c1, c2 = d.chi1.fn, d.chi2.fn
    coef = lambda v: simplify_scalar(v * HALF)  # noqa: E731
    f = linear_combination([(coef(d.alpha + d.q), c1), (coef(d.alpha - d.q), c2)])
    g = linear_combination([(coef(1 + w), c1), (coef(1 - w), c2)])
    return g, f


def _family6(s, sigma, d, free, predicates, tol):
    if _eq(d.alpha, 0):
        raise InvalidDescriptor("family 6 requires alpha != 0")
    _require_even(d.chi1, sigma, "family 6")
    _require_even(d.chi2, sigma, "family 6")
    if d.chi1.same_as(d.chi2):
        raise InvalidDescriptor("family 6 requires two different multiplicative functions")
    return d.chi2.fn, d.chi1.fn.scale(d.alpha)


def _family7(s, sigma, d, free, predicates, tol):
    _require_even(d.chi, sigma, "family 7")
    if d.h is not None:
        h = d.h
        if not is_even(h, sigma, tol):
            raise InvalidDescriptor("family 7 requires a sigma-even h")
        _check_sine_law(s, h, d.chi, tol)
    else:
        spec = d.h_spec or HSpec()
        h = build_h(
            s, sigma, d.chi,
            additive=spec.additive, rho=spec.rho,
            predicates=predicates, tol=tol,
        )
        if spec.spec is not None:
            h.spec = spec.spec
        elif spec.additive is None and spec.rho is None:
            h.spec = {"rule": "const", "value": [0.0, 0.0]}
    chi = d.chi.fn
    f = chi.scale(d.alpha) + h
    g = chi + h.scale(d.branch)
    return g, f


def _check_sine_law(s, h, chi, tol):
    for x, y in pairs(s):
        xy = s.compose(x, y)
        if not values_equal(h(xy), h(x) * chi(y) + h(y) * chi(x), tol):
            raise InvalidDescriptor(f"h fails the sine addition law at ({x}, {y})")


def _family8(s, sigma, d, free, predicates, tol):
    if _eq(d.alpha, 1) or _eq(d.alpha, -1):
        raise InvalidDescriptor("family 8 requires alpha != +-1")
    if d.chi is None or d.chi.is_zero:
        raise InvalidDescriptor("family 8 requires a non-zero multiplicative function")
    chi_star = d.chi.star(sigma)
    if d.chi.same_as(chi_star):
        raise InvalidDescriptor("family 8 requires chi != chi o sigma")
    cp = simplify_scalar((1 + d.alpha) * HALF)
    cm = simplify_scalar((1 - d.alpha) * HALF)
    f = linear_combination([(cp, d.chi.fn), (-cm, chi_star.fn)])
    g = linear_combination([(cp, d.chi.fn), (cm, chi_star.fn)])
    return g, f


_BUILDERS = {
    1: _family1, 2: _family2, 3: _family3, 4: _family4,
    5: _family5, 6: _family6, 7: _family7, 8: _family8,
}
