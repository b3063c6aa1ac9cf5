"""Semigroup carriers: finite Cayley tables and rule-defined structures.

Finite carriers use element indices 0..order-1; display labels are
cosmetic.  Rule-defined ("procedural") carriers model infinite structures
through a finite sample window: axioms and universally quantified
properties are checked on window elements, while composition and function
evaluation stay total so products may leave the window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .exactnum import values_equal

AUTOMORPHISM_ORDER_BOUND = 8
TRIPLE_SAMPLE_CAP = 64  # triple-quantified checks subsample large windows


@dataclass(frozen=True)
class FiniteSemigroup:
    """Order-n carrier with an n x n Cayley table (entry [x][y] = index of xy)."""

    cayley: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = len(self.cayley)
        object.__setattr__(self, "cayley", tuple(tuple(row) for row in self.cayley))
        if any(len(row) != n for row in self.cayley):
            raise ValueError("Cayley table must be square")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("need one label per element")

    @property
    def order(self) -> int:
        return len(self.cayley)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(range(self.order))

    is_finite = True

    def compose(self, x: int, y: int) -> int:
        n = self.order
        if not (0 <= x < n and 0 <= y < n):
            raise IndexError(f"element index out of range: {(x, y)}")
        return self.cayley[x][y]

    def label(self, x) -> str:
        return self.labels[x] if self.labels else str(x)


@dataclass(frozen=True)
class ProceduralSemigroup:
    """Rule-defined carrier with a finite sample window for bounded checks."""

    name: str
    window: tuple
    compose_rule: Callable = field(compare=False)
    contains_rule: Callable = field(compare=False)
    eq_rule: Callable | None = field(default=None, compare=False)

    @property
    def elements(self) -> tuple:
        return self.window

    is_finite = False

    def compose(self, x, y):
        if not (self.contains_rule(x) and self.contains_rule(y)):
            raise ValueError(f"element outside domain of {self.name}: {(x, y)}")
        return self.compose_rule(x, y)

    def same_element(self, x, y) -> bool:
        return self.eq_rule(x, y) if self.eq_rule else x == y

    def label(self, x) -> str:
        return str(x)


Semigroup = FiniteSemigroup | ProceduralSemigroup


@dataclass(frozen=True)
class InvolutiveAutomorphism:
    """A map with sigma(sigma(x)) = x and sigma(xy) = sigma(x)sigma(y)."""

    name: str
    perm: tuple[int, ...] | None = None
    rule: Callable | None = field(default=None, compare=False)

    def __post_init__(self):
        if (self.perm is None) == (self.rule is None):
            raise ValueError("exactly one of perm / rule must be given")

    def __call__(self, x):
        return self.perm[x] if self.perm is not None else self.rule(x)

    @property
    def is_identity(self) -> bool:
        if self.perm is not None:
            return all(p == i for i, p in enumerate(self.perm))
        return self.name == "id"


def identity_automorphism(s: Semigroup) -> InvolutiveAutomorphism:
    if s.is_finite:
        return InvolutiveAutomorphism("id", perm=tuple(range(s.order)))
    return InvolutiveAutomorphism("id", rule=lambda x: x)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def compose(s: Semigroup, x, y):
    """Product xy per the Cayley table or composition rule."""
    return s.compose(x, y)


def pairs(s: Semigroup) -> Iterator[tuple]:
    return itertools.product(s.elements, repeat=2)


def triple_sample(s: Semigroup, cap: int = TRIPLE_SAMPLE_CAP) -> tuple:
    """Deterministic element subsample for triple-quantified window checks."""
    elems = s.elements
    if len(elems) <= cap:
        return tuple(elems)
    step = -(-len(elems) // cap)
    return tuple(elems[::step])


def validate(s: Semigroup) -> list[tuple]:
    """Closure/associativity violations on all checked triples; empty iff valid.

    Violations are data, not errors: ("closure", x, y) entries flag table
    values outside the carrier, ("associativity", x, y, z) entries name a
    triple with (xy)z != x(yz).
    """
    report: list[tuple] = []
    if s.is_finite:
        n = s.order
        bad_cells = set()
        for x in range(n):
            for y in range(n):
                v = s.cayley[x][y]
                if not isinstance(v, int) or not 0 <= v < n:
                    report.append(("closure", x, y))
                    bad_cells.add((x, y))
        if bad_cells:
            return report
        for x, y, z in itertools.product(range(n), repeat=3):
            if s.cayley[s.cayley[x][y]][z] != s.cayley[x][s.cayley[y][z]]:
                report.append(("associativity", x, y, z))
        return report
    elems = triple_sample(s)
    for x, y in itertools.product(s.elements, repeat=2):
        try:
            s.compose(x, y)
        except Exception:
            report.append(("closure", x, y))
    for x, y, z in itertools.product(elems, repeat=3):
        if not s.same_element(s.compose(s.compose(x, y), z), s.compose(x, s.compose(y, z))):
            report.append(("associativity", x, y, z))
    return report


def _same(s: Semigroup, a, b) -> bool:
    return a == b if s.is_finite else s.same_element(a, b)


def validate_automorphism(s: Semigroup, sigma: InvolutiveAutomorphism) -> list[tuple]:
    """Violations of involutivity / multiplicativity on the window."""
    report: list[tuple] = []
    for x in s.elements:
        if not _same(s, sigma(sigma(x)), x):
            report.append(("involution", x))
    for x, y in pairs(s):
        if not _same(s, sigma(s.compose(x, y)), s.compose(sigma(x), sigma(y))):
            report.append(("automorphism", x, y))
    return report


def product_set(s: Semigroup, t: Iterable) -> frozenset:
    """T^2 = {xy | x, y in T}, window-intersected on procedural carriers."""
    t = frozenset(t)
    out = {s.compose(x, y) for x in t for y in t}
    if not s.is_finite:
        out &= set(s.elements)
    return frozenset(out)


def enumerate_involutive_automorphisms(
    s: FiniteSemigroup, max_order: int = AUTOMORPHISM_ORDER_BOUND
) -> list[InvolutiveAutomorphism]:
    """All involutive automorphisms, brute force over permutations.

    Canonically ordered (lexicographic by permutation); the identity is
    always first.
    """
    if not s.is_finite:
        raise TypeError("enumeration requires a finite carrier")
    if s.order > max_order:
        raise ValueError(f"order {s.order} exceeds enumeration bound {max_order}")
    n = s.order
    found = []
    for perm in itertools.permutations(range(n)):
        if any(perm[perm[x]] != x for x in range(n)):
            continue
        if all(
            perm[s.cayley[x][y]] == s.cayley[perm[x]][perm[y]]
            for x in range(n)
            for y in range(n)
        ):
            found.append(InvolutiveAutomorphism(_perm_name(perm), perm=perm))
    return found


def _perm_name(perm: tuple[int, ...]) -> str:
    if all(p == i for i, p in enumerate(perm)):
        return "id"
    return "perm:" + ",".join(map(str, perm))


def is_central(s: Semigroup, f, tol: float = 1e-9) -> bool:
    """f(xy) = f(yx) for all window pairs."""
    return all(
        values_equal(f(s.compose(x, y)), f(s.compose(y, x)), tol) for x, y in pairs(s)
    )


def is_abelian_fn(s: Semigroup, f, tol: float = 1e-9) -> bool:
    """Central and f(xyz) = f(xzy) for all (sampled) window triples."""
    if not is_central(s, f, tol):
        return False
    elems = triple_sample(s)
    for x, y, z in itertools.product(elems, repeat=3):
        a = s.compose(s.compose(x, y), z)
        b = s.compose(s.compose(x, z), y)
        if not values_equal(f(a), f(b), tol):
            return False
    return True
