"""Complex-valued functions on a carrier and their multiplicative structure.

Covers the reflection f*(x) = f(sigma(x)) with the even/odd decomposition
f = (f+f*)/2 + (f-f*)/2, validation and exhaustive enumeration of
multiplicative functions chi (chi(xy) = chi(x)chi(y)), additive functions
A (A(xy) = A(x)+A(y)) on a sub-carrier, and the null-set triple

    I_chi   = {x : chi(x) = 0}
    I_chi^2 = {xy : x, y in I_chi}
    P_chi   = {p in I_chi \\ I_chi^2 : up, pv, upv in I_chi \\ I_chi^2
               for all u, v outside I_chi}

On finite carriers everything is exact.  On rule-defined carriers the
quantifiers are window-closed: products that leave the sample window are
skipped, and reports are flagged "window" rather than "exact".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .exactnum import Cyc, values_equal
from .semigroups import (
    FiniteSemigroup,
    InvolutiveAutomorphism,
    Semigroup,
    pairs,
)

CHARACTER_ORDER_BOUND = 6
DEFAULT_TOL = 1e-9


# ---------------------------------------------------------------------------
# scalar functions
# ---------------------------------------------------------------------------


class ScalarFunction:
    """A function carrier -> C: dense value vector (finite) or evaluator rule.

    Procedural evaluators are total on the carrier's domain, so they accept
    products that fall outside the sample window.  Evaluations are memoised.
    """

    __slots__ = ("carrier", "values", "rule", "spec", "_memo")

    def __init__(self, carrier: Semigroup, values=None, rule=None, spec=None):
        self.carrier = carrier
        self.values = tuple(values) if values is not None else None
        self.rule = rule
        self.spec = spec
        self._memo: dict = {}
        if (values is None) == (rule is None):
            raise ValueError("exactly one of values / rule must be given")
        if carrier.is_finite and self.values is not None and len(self.values) != carrier.order:
            raise ValueError("need one value per element")

    def __call__(self, x):
        if self.values is not None:
            return self.values[x]
        try:
            return self._memo[x]
        except (KeyError, TypeError):
            v = self.rule(x)
            try:
                self._memo[x] = v
            except TypeError:
                pass
            return v

    def window_values(self) -> list:
        return [self(x) for x in self.carrier.elements]

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(values_equal(v, 0, tol) for v in self.window_values())

    def map_values(self, f: Callable, spec=None) -> "ScalarFunction":
        if self.values is not None:
            return ScalarFunction(self.carrier, values=[f(v) for v in self.values])
        return ScalarFunction(self.carrier, rule=lambda x: f(self(x)), spec=spec)

    # -- pointwise algebra (carriers must match) -----------------------

    def _assert_same(self, other: "ScalarFunction"):
        if other.carrier is not self.carrier and other.carrier != self.carrier:
            raise ValueError("functions live on different carriers")

    def __add__(self, other):
        if isinstance(other, ScalarFunction):
            self._assert_same(other)
            if self.values is not None and other.values is not None:
                return ScalarFunction(
                    self.carrier, values=[a + b for a, b in zip(self.values, other.values)]
                )
            return ScalarFunction(
                self.carrier,
                rule=lambda x: self(x) + other(x),
                spec=_combo_spec([(1, self), (1, other)]),
            )
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, ScalarFunction):
            return self + (-other)
        return NotImplemented

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "ScalarFunction":
        if self.values is not None:
            return ScalarFunction(self.carrier, values=[c * v for v in self.values])
        return ScalarFunction(
            self.carrier, rule=lambda x: c * self(x), spec=_combo_spec([(c, self)])
        )

    def __mul__(self, other):
        if isinstance(other, ScalarFunction):
            self._assert_same(other)
            if self.values is not None and other.values is not None:
                return ScalarFunction(
                    self.carrier, values=[a * b for a, b in zip(self.values, other.values)]
                )
            return ScalarFunction(self.carrier, rule=lambda x: self(x) * other(x))
        return self.scale(other)

    __rmul__ = __mul__

    def max_diff(self, other: "ScalarFunction") -> float:
        self._assert_same(other)
        return max(
            abs(complex(self(x)) - complex(other(x))) for x in self.carrier.elements
        )

    def equal_to(self, other: "ScalarFunction", tol: float = DEFAULT_TOL) -> bool:
        self._assert_same(other)
        return all(
            values_equal(self(x), other(x), tol) for x in self.carrier.elements
        )

    def __repr__(self):
        if self.values is not None:
            return f"ScalarFunction({list(self.values)!r})"
        return f"ScalarFunction(rule, spec={self.spec!r})"


def constant_function(carrier: Semigroup, c) -> ScalarFunction:
    if carrier.is_finite:
        return ScalarFunction(carrier, values=[c] * carrier.order)
    return ScalarFunction(
        carrier, rule=lambda x: c, spec={"rule": "const", "value": _c2pair(c)}
    )


def _c2pair(c) -> list[float]:
    z = complex(c)
    return [z.real, z.imag]


def _combo_spec(parts) -> dict | None:
    terms = []
    for coef, fn in parts:
        if fn.spec is None:
            return None
        terms.append({"coef": _c2pair(coef), "fn": fn.spec})
    return {"rule": "combo", "terms": terms}


def linear_combination(parts: list[tuple]) -> ScalarFunction:
    """sum of coef * fn over parts; keeps a serializable spec when possible."""
    (c0, f0), *rest = parts
    out = f0.scale(c0)
    for c, f in rest:
        out = out + f.scale(c)
    if any(f.values is None for _, f in parts):
        out.spec = _combo_spec(parts)
    return out


# ---------------------------------------------------------------------------
# reflection and parity
# ---------------------------------------------------------------------------


def star(f: ScalarFunction, sigma: InvolutiveAutomorphism) -> ScalarFunction:
    """f* = f o sigma."""
    if f.values is not None:
        return ScalarFunction(f.carrier, values=[f.values[sigma(x)] for x in f.carrier.elements])
    spec = None
    if f.spec is not None:
        spec = {"rule": "star", "sigma": sigma.name, "fn": f.spec}
    return ScalarFunction(f.carrier, rule=lambda x: f(sigma(x)), spec=spec)


def even_part(f: ScalarFunction, sigma: InvolutiveAutomorphism) -> ScalarFunction:
    return linear_combination([(Fraction(1, 2), f), (Fraction(1, 2), star(f, sigma))])


def odd_part(f: ScalarFunction, sigma: InvolutiveAutomorphism) -> ScalarFunction:
    return linear_combination([(Fraction(1, 2), f), (Fraction(-1, 2), star(f, sigma))])


def is_even(f: ScalarFunction, sigma: InvolutiveAutomorphism, tol: float = DEFAULT_TOL) -> bool:
    return all(values_equal(f(x), f(sigma(x)), tol) for x in f.carrier.elements)


def is_odd(f: ScalarFunction, sigma: InvolutiveAutomorphism, tol: float = DEFAULT_TOL) -> bool:
    return all(values_equal(f(x), -f(sigma(x)), tol) for x in f.carrier.elements)


# ---------------------------------------------------------------------------
# multiplicative functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiplicativeFunction:
    """A chi with chi(xy) = chi(x)chi(y); zeros allowed, zero function flagged.

    Finite enumerated characters carry exact phases: element -> None (zero)
    or a Fraction t meaning the root of unity e^(2*pi*i*t).
    """

    fn: ScalarFunction = field(compare=False)
    phases: tuple | None = None
    name: str = ""

    def __call__(self, x):
        return self.fn(x)

    @property
    def is_zero(self) -> bool:
        if self.phases is not None:
            return all(p is None for p in self.phases)
        return self.fn.is_zero(tol=DEFAULT_TOL)

    def star(self, sigma: InvolutiveAutomorphism) -> "MultiplicativeFunction":
        phases = None
        if self.phases is not None and sigma.perm is not None:
            phases = tuple(self.phases[sigma(x)] for x in range(len(self.phases)))
        return MultiplicativeFunction(
            fn=star(self.fn, sigma),
            phases=phases,
            name=self.name + "*" if self.name else "",
        )

    def is_even(self, sigma: InvolutiveAutomorphism, tol: float = DEFAULT_TOL) -> bool:
        other = self.star(sigma)
        if self.phases is not None and other.phases is not None:
            return self.phases == other.phases
        return self.fn.equal_to(other.fn, tol)

    def same_as(self, other: "MultiplicativeFunction", tol: float = DEFAULT_TOL) -> bool:
        if self.phases is not None and other.phases is not None:
            return self.phases == other.phases
        return self.fn.equal_to(other.fn, tol)


def is_multiplicative(s: Semigroup, f, tol: float = DEFAULT_TOL) -> bool:
    """chi(xy) = chi(x)chi(y) on all window pairs (exact for exact values)."""
    ev = f.fn if isinstance(f, MultiplicativeFunction) else f
    return all(
        values_equal(ev(s.compose(x, y)), ev(x) * ev(y), tol) for x, y in pairs(s)
    )


def is_additive(s: Semigroup, subset, f, tol: float = DEFAULT_TOL) -> bool:
    """A(xy) = A(x) + A(y) for sub-carrier pairs.

    For dense finite functions the product must stay inside the subset to
    be testable; rule-defined functions are evaluated at any product.
    """
    subset = frozenset(subset)
    ev = f if callable(f) else (lambda x: f[x])
    dense = isinstance(f, ScalarFunction) and f.values is not None
    for x, y in itertools.product(subset & set(s.elements), repeat=2):
        xy = s.compose(x, y)
        if dense and xy not in subset:
            continue
        if not values_equal(ev(xy), ev(x) + ev(y), tol):
            return False
    return True


def element_period(s: FiniteSemigroup, x: int) -> int:
    """Period p of the cyclic subsemigroup generated by x (x^(i+p) = x^i)."""
    seen: dict[int, int] = {}
    cur, step = x, 1
    while cur not in seen:
        seen[cur] = step
        cur = s.compose(cur, x)
        step += 1
    return step - seen[cur]


def _phase_mul(a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None or b is None:
        return None
    return (a + b) % 1


@lru_cache(maxsize=None)
def enumerate_multiplicative(
    s: FiniteSemigroup, max_order: int = CHARACTER_ORDER_BOUND
) -> tuple[MultiplicativeFunction, ...]:
    """All multiplicative functions S -> C, canonically ordered.

    A non-zero value at x generates a finite subsemigroup of C\\{0}, hence is
    a root of unity of order dividing the period of x; enumeration therefore
    ranges over {0} plus those roots and filters by the defining identity,
    checked exactly in phase arithmetic.
    """
    if s.order > max_order:
        raise ValueError(f"order {s.order} exceeds enumeration bound {max_order}")
    n = s.order
    candidates: list[list[Fraction | None]] = []
    for x in range(n):
        p = element_period(s, x)
        candidates.append([None] + [Fraction(k, p) for k in range(p)])
    found: list[tuple] = []
    for assign in itertools.product(*candidates):
        ok = True
        for x in range(n):
            for y in range(n):
                if _phase_mul(assign[x], assign[y]) != assign[s.cayley[x][y]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(assign)
    found.sort(key=lambda a: tuple((0, Fraction(0)) if t is None else (1, t) for t in a))
    out = []
    for i, phases in enumerate(found):
        values = [Cyc.zero() if t is None else Cyc.root_of_unity(t) for t in phases]
        fn = ScalarFunction(s, values=values)
        out.append(MultiplicativeFunction(fn=fn, phases=phases, name=f"chi{i}"))
    return tuple(out)


def nonzero_characters(s: FiniteSemigroup) -> list[MultiplicativeFunction]:
    return [c for c in enumerate_multiplicative(s) if not c.is_zero]


def even_characters(
    s: FiniteSemigroup, sigma: InvolutiveAutomorphism
) -> list[MultiplicativeFunction]:
    return [c for c in nonzero_characters(s) if c.is_even(sigma)]


# ---------------------------------------------------------------------------
# additive-function solution space (finite carriers)
# ---------------------------------------------------------------------------


def additive_basis(s: FiniteSemigroup, subset=None) -> list[dict]:
    """Basis of the space of additive functions on a finite sub-carrier.

    Exact rational null space of the constraints A(xy) = A(x) + A(y); on a
    finite semigroup the space is always {0} because p * A(x) = 0 for the
    period p of x.
    """
    subset = frozenset(s.elements if subset is None else subset)
    index = {x: i for i, x in enumerate(sorted(subset))}
    rows: list[list[Fraction]] = []
    for x, y in itertools.product(sorted(subset), repeat=2):
        xy = s.compose(x, y)
        if xy not in subset:
            continue
        row = [Fraction(0)] * len(index)
        row[index[xy]] += 1
        row[index[x]] -= 1
        row[index[y]] -= 1
        rows.append(row)
    basis_vectors = _nullspace(rows, len(index))
    order = sorted(subset)
    return [{order[i]: v[i] for i in range(len(order))} for v in basis_vectors]


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class AdditiveFunction:
    """An additive function on a stated sub-carrier (intended: S \\ I_chi)."""

    carrier: Semigroup = field(compare=False)
    subset: frozenset = field(compare=False)
    fn: Callable = field(compare=False)

    def __call__(self, x):
        return self.fn(x)

    def validate(self, tol: float = DEFAULT_TOL) -> bool:
        return is_additive(self.carrier, self.subset, self.fn, tol)


# ---------------------------------------------------------------------------
# null sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NullSets:
    """I_chi, I_chi^2 and P_chi, window-restricted on procedural carriers."""

    i_chi: frozenset
    i_chi_sq: frozenset
    p_chi: frozenset
    certified: str  # "exact" | "window"


def null_sets(
    s: Semigroup,
    sigma: InvolutiveAutomorphism,
    chi,
    tol: float = DEFAULT_TOL,
) -> NullSets:
    """Null-set triple for a non-zero multiplicative function.

    Window semantics on procedural carriers: quantified products that leave
    the window are skipped, so membership is certified on the window only.
    """
    ev = chi.fn if isinstance(chi, MultiplicativeFunction) else chi
    elems = list(s.elements)
    if all(values_equal(ev(x), 0, tol) for x in elems):
        raise ValueError("null sets require a non-zero multiplicative function")
    in_window = set(elems)
    i_chi = {x for x in elems if values_equal(ev(x), 0, tol)}
    i_sq = {s.compose(a, b) for a in i_chi for b in i_chi}
    if not s.is_finite:
        i_sq &= in_window
    diff = i_chi - i_sq
    units = [u for u in elems if u not in i_chi]
    p_chi = set()
    for p in diff:
        ok = True
        for u in units:
            up, pu = s.compose(u, p), s.compose(p, u)
            for prod in (up, pu):
                if (s.is_finite or prod in in_window) and prod not in diff:
                    ok = False
                    break
            if not ok:
                break
            for v in units:
                upv = s.compose(up, v)
                if (s.is_finite or upv in in_window) and upv not in diff:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            p_chi.add(p)
    return NullSets(
        i_chi=frozenset(i_chi),
        i_chi_sq=frozenset(i_sq),
        p_chi=frozenset(p_chi),
        certified="exact" if s.is_finite else "window",
    )


@dataclass
class PchiReport:
    """Counterexample report for the closure/reflection properties of P_chi."""

    counterexamples: list
    translates_checked: int
    reflection_agrees: bool
    certified: str

    @property
    def ok(self) -> bool:
        return not self.counterexamples and self.reflection_agrees


def check_pchi_lemma(
    s: Semigroup,
    sigma: InvolutiveAutomorphism,
    chi: MultiplicativeFunction,
    tol: float = DEFAULT_TOL,
) -> PchiReport:
    """Verifies (a) u not in I_chi, p in P_chi => up, pu in P_chi and
    (b) sigma(P_chi) = P_(chi o sigma), window-bounded on procedural carriers."""
    ns = null_sets(s, sigma, chi, tol)
    in_window = set(s.elements)
    units = [u for u in s.elements if u not in ns.i_chi]
    bad = []
    checked = 0
    for u in units:
        for p in ns.p_chi:
            for prod in (s.compose(u, p), s.compose(p, u)):
                if s.is_finite or prod in in_window:
                    checked += 1
                    if prod not in ns.p_chi:
                        bad.append((u, p, prod))
    ns_star = null_sets(s, sigma, chi.star(sigma) if isinstance(chi, MultiplicativeFunction) else star(chi, sigma), tol)
    image = {sigma(p) for p in ns.p_chi}
    if not s.is_finite:
        image &= in_window
    agrees = image == set(ns_star.p_chi)
    return PchiReport(
        counterexamples=bad,
        translates_checked=checked,
        reflection_agrees=agrees,
        certified=ns.certified,
    )
