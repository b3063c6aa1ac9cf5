"""Exact scalar arithmetic for character-valued algebra.

Two exact number types supplement Python's float ``complex``:

* ``Cyc`` — elements of the cyclotomic field Q(zeta_n), stored as a
  polynomial in zeta_n = e^(2*pi*i/n) reduced modulo the n-th cyclotomic
  polynomial.  Rational complex numbers a+bi live in Q(zeta_4), roots of
  unity of any order are single monomials, and sums/products of character
  values stay exact.  Zero tests are exact, so "residual is exactly zero"
  is a decidable statement.
* ``ExpPoly`` — Laurent polynomials c_k * E^k in a transcendental base
  E = e with rational coefficients.  Values of exponential characters
  e^(a*x+b*y) with integer data are monomials, and the transcendence of e
  makes the coefficient-wise zero test exact.

Everything degrades gracefully: mixing an exact value with a float
``complex`` produces a float ``complex``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rat = Union[int, Fraction]

# ---------------------------------------------------------------------------
# dense polynomials over Q, coefficient lists low degree -> high
# ---------------------------------------------------------------------------


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(out)


def _pdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv
        d = len(a) - len(b)
        q[d] = c
        for i, cb in enumerate(b):
            a[d + i] -= c * cb
        _trim(a)
        if not a:
            break
    return _trim(q), a


def _pxgcd(a: list[Fraction], b: list[Fraction]):
    """Extended gcd: returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, [-c for c in _pmul(q, s1)])
        t0, t1 = t1, _padd(t0, [-c for c in _pmul(q, t1)])
    return r0, s0, t0


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[Fraction, ...]:
    """n-th cyclotomic polynomial Phi_n as a coefficient tuple."""
    p = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = _pdivmod(p, list(cyclotomic_poly(d)))
            assert not r
            p = q
    return tuple(p)


def _phi_deg(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(p: list[Fraction], n: int) -> tuple[Fraction, ...]:
    _, r = _pdivmod(_trim(list(p)), list(cyclotomic_poly(n)))
    r = r + [Fraction(0)] * (_phi_deg(n) - len(r))
    return tuple(r)


# ---------------------------------------------------------------------------
# cyclotomic rationals
# ---------------------------------------------------------------------------


class Cyc:
    """An element of Q(zeta_n), reduced mod the cyclotomic polynomial.

    The conductor n is per-value; binary operations lift both operands to
    the lcm field first.  Representations are canonical within a fixed n,
    so ``is_zero`` and equality are exact.
    """

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs) -> None:
        self.n = n
        self.c = tuple(Fraction(x) for x in coeffs)
        if len(self.c) != _phi_deg(n):
            raise ValueError(f"need {_phi_deg(n)} coefficients for conductor {n}")

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(re: Rat, im: Rat = 0) -> "Cyc":
        re, im = Fraction(re), Fraction(im)
        if im == 0:
            return Cyc(1, (re,))
        return Cyc(4, (re, im))  # basis {1, i}

    @staticmethod
    def root_of_unity(turns: Fraction) -> "Cyc":
        """e^(2*pi*i*turns) for rational turns."""
        t = Fraction(turns) % 1
        n, k = t.denominator, t.numerator
        mono = [Fraction(0)] * k + [Fraction(1)]
        return Cyc(n, _reduce(mono, n))

    @staticmethod
    def zero() -> "Cyc":
        return Cyc(1, (Fraction(0),))

    # -- coercion helpers ---------------------------------------------

    @staticmethod
    def _lift_of(v) -> "Cyc | None":
        if isinstance(v, Cyc):
            return v
        if isinstance(v, (int, Fraction)):
            return Cyc.rational(v)
        return None

    def _lift(self, m: int) -> list[Fraction]:
        """Coefficients of self viewed in Q(zeta_m); requires n | m."""
        step = m // self.n
        out = [Fraction(0)] * (len(self.c) * step + 1)
        for k, ck in enumerate(self.c):
            out[k * step] += ck
        return list(_reduce(out, m))

    # -- arithmetic ----------------------------------------------------

    def _binop(self, other, f):
        o = Cyc._lift_of(other)
        if o is None:
            if isinstance(other, (float, complex, ExpPoly)):
                return f(complex(self), complex(other), float_mode=True)
            return NotImplemented
        m = self.n * o.n // math.gcd(self.n, o.n)
        return f(self._lift(m), o._lift(m), m=m)

    def __add__(self, other):
        def f(a, b, m=None, float_mode=False):
            if float_mode:
                return a + b
            return Cyc(m, _reduce(_padd(a, b), m))

        return self._binop(other, f)

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        if isinstance(other, (Cyc, int, Fraction)):
            return self.__add__(-other)
        if isinstance(other, (float, complex, ExpPoly)):
            return complex(self) - complex(other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        def f(a, b, m=None, float_mode=False):
            if float_mode:
                return a * b
            return Cyc(m, _reduce(_pmul(a, b), m))

        return self._binop(other, f)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        g, u, _ = _pxgcd(_trim(list(self.c)), list(cyclotomic_poly(self.n)))
        assert len(g) == 1  # Phi_n irreducible over Q
        inv = [x / g[0] for x in u]
        return Cyc(self.n, _reduce(inv, self.n))

    def __truediv__(self, other):
        o = Cyc._lift_of(other)
        if o is not None:
            return self * o.inverse()
        if isinstance(other, (float, complex)):
            return complex(self) / complex(other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = Cyc._lift_of(other)
        if o is not None:
            return o * self.inverse()
        if isinstance(other, (float, complex)):
            return complex(other) / complex(self)
        return NotImplemented

    def conjugate(self) -> "Cyc":
        out = [Fraction(0)] * self.n
        for k, ck in enumerate(self.c):
            out[(self.n - k) % self.n] += ck
        return Cyc(self.n, _reduce(out, self.n))

    # -- predicates / conversions ---------------------------------------

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def __eq__(self, other) -> bool:
        o = Cyc._lift_of(other)
        if o is not None:
            d = self - o
            return isinstance(d, Cyc) and d.is_zero()
        if isinstance(other, (float, complex)):
            return complex(self) == complex(other)
        return NotImplemented

    __hash__ = None  # representations across conductors are not canonical

    def __complex__(self) -> complex:
        z = 0j
        for k, ck in enumerate(self.c):
            if ck:
                z += float(ck) * cmath.exp(2j * cmath.pi * k / self.n)
        return z

    def __abs__(self) -> float:
        return abs(complex(self))

    def rational_parts(self) -> "tuple[Fraction, Fraction] | None":
        """(re, im) if the value lies in Q(i), else None."""
        if self.n in (1, 2):  # basis {1}: the value is the constant term
            return self.c[0], Fraction(0)
        if self.n == 4:
            return self.c[0], self.c[1]
        if self.n % 4 == 0:
            lifted = self
        elif self.n % 2 == 0:
            lifted = Cyc(self.n * 2, self._lift(self.n * 2))
        else:
            lifted = Cyc(self.n * 4, self._lift(self.n * 4))
        m = lifted.n
        step = m // 4  # zeta_m^(m/4) = i, and m/4 < phi(m) so this is basis-reduced
        re, im = Fraction(0), Fraction(0)
        for k, ck in enumerate(lifted.c):
            if ck == 0:
                continue
            if k == 0:
                re += ck
            elif k == step:
                im += ck
            else:
                return None
        return re, im

    def __repr__(self) -> str:
        return f"Cyc({self.n}, {self.c})"


# ---------------------------------------------------------------------------
# Laurent polynomials in the transcendental base e
# ---------------------------------------------------------------------------


class ExpPoly:
    """sum_k c_k * e^k with rational c_k and integer k; exact and real.

    Coefficients stay plain ints when possible (Fraction arithmetic is an
    order of magnitude slower and residual scans hit millions of terms).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None) -> None:
        t: dict[int, Rat] = {}
        for k, c in dict(terms or {}).items():
            if not isinstance(c, (int, Fraction)):
                c = Fraction(c)
            if c:
                t[int(k)] = c
        self.terms = t

    @staticmethod
    def exp(k: int) -> "ExpPoly":
        return ExpPoly({k: 1})

    @staticmethod
    def const(c: Rat) -> "ExpPoly":
        return ExpPoly({0: c})

    @staticmethod
    def _coerce(v) -> "ExpPoly | None":
        if isinstance(v, ExpPoly):
            return v
        if isinstance(v, (int, Fraction)):
            return ExpPoly.const(v)
        return None

    def __add__(self, other):
        o = ExpPoly._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        t = dict(self.terms)
        for k, c in o.terms.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        out = ExpPoly.__new__(ExpPoly)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        out = ExpPoly.__new__(ExpPoly)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        o = ExpPoly._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        t = dict(self.terms)
        for k, c in o.terms.items():
            v = t.get(k, 0) - c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        out = ExpPoly.__new__(ExpPoly)
        out.terms = t
        return out

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = ExpPoly._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        t: dict[int, Rat] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = k1 + k2
                v = t.get(k, 0) + c1 * c2
                if v:
                    t[k] = v
                else:
                    t.pop(k, None)
        out = ExpPoly.__new__(ExpPoly)
        out.terms = t
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExpPoly({k: Fraction(c) / other for k, c in self.terms.items()})
        if isinstance(other, ExpPoly) and len(other.terms) == 1:
            ((k0, c0),) = other.terms.items()
            return ExpPoly({k - k0: Fraction(c) / c0 for k, c in self.terms.items()})
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def conjugate(self) -> "ExpPoly":
        return self  # real-valued

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        o = ExpPoly._coerce(other)
        if o is not None:
            return self.terms == o.terms
        if isinstance(other, (float, complex)):
            return complex(self) == complex(other)
        return NotImplemented

    __hash__ = None

    def __float__(self) -> float:
        return math.fsum(float(c) * math.exp(k) for k, c in self.terms.items())

    def __complex__(self) -> complex:
        return complex(float(self))

    def __abs__(self) -> float:
        return abs(float(self))

    def __repr__(self) -> str:
        return f"ExpPoly({self.terms})"


# ---------------------------------------------------------------------------
# generic scalar helpers (duck-typed over complex | Cyc | ExpPoly | rationals)
# ---------------------------------------------------------------------------

EXACT_TYPES = (int, Fraction, Cyc, ExpPoly)


def is_exact(v) -> bool:
    return isinstance(v, EXACT_TYPES)


def simplify_scalar(v):
    """Collapse integral Fractions to ints (int arithmetic is much faster)."""
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def as_complex(v) -> complex:
    return complex(v)


def conj(v):
    if isinstance(v, (int, float, Fraction)):
        return v
    return v.conjugate()


def scalar_is_zero(v, tol: float = 0.0) -> bool:
    if isinstance(v, (Cyc, ExpPoly)):
        return v.is_zero()
    if isinstance(v, (int, Fraction)):
        return v == 0
    return abs(v) <= tol


def values_equal(a, b, tol: float = 0.0) -> bool:
    """Exact equality when both values are exact, |a-b| <= tol otherwise."""
    if is_exact(a) and is_exact(b):
        d = a - b
        if is_exact(d):
            return scalar_is_zero(d)
    return abs(complex(a) - complex(b)) <= tol


def exact_sqrt(v) -> "Cyc | None":
    """Exact principal square root of a rational complex value, if any.

    Convention: Re >= 0, and Im >= 0 on the slit Re == 0.
    """
    c = Cyc._lift_of(v)
    if c is None:
        return None
    parts = c.rational_parts()
    if parts is None:
        return None
    a, b = parts

    def frac_sqrt(x: Fraction) -> "Fraction | None":
        if x < 0:
            return None
        pn, pd = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if pn * pn == x.numerator and pd * pd == x.denominator:
            return Fraction(pn, pd)
        return None

    hyp = frac_sqrt(a * a + b * b)
    if hyp is None:
        return None
    re = frac_sqrt((a + hyp) / 2)
    if re is None:
        return None
    if re == 0:
        im = frac_sqrt(-a) if b == 0 else None
        if im is None:
            return None
        return Cyc.rational(0, im)
    im = b / (2 * re)
    return Cyc.rational(re, im)
