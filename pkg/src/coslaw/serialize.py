"""Flat-file formats: semigroup tables, function/pair JSON, solution JSONL.

Semigroup text format (UTF-8, ``#`` starts a comment):

    order n
    <n rows of n space-separated element indices>
    sigma p0 p1 ... p(n-1)        # optional involutive automorphism

Scalar values serialize as [re, im]; exact rationals are written as
fraction strings ("3/4") so that exact values survive a round trip, while
float values stay plain numbers.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exactnum import Cyc, is_exact
from .families import SolutionPair
from .fixtures import Fixture, get_fixture
from .functions import ScalarFunction
from .semigroups import (
    FiniteSemigroup,
    InvolutiveAutomorphism,
    validate,
    validate_automorphism,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


# ---------------------------------------------------------------------------
# semigroup files
# ---------------------------------------------------------------------------


def load_semigroup(path) -> tuple[FiniteSemigroup, InvolutiveAutomorphism | None]:
    """Parse and validate a semigroup file; errors carry line numbers and
    witness triples/pairs."""
    rows: list[tuple[int, ...]] = []
    order: int | None = None
    sigma_perm: tuple[int, ...] | None = None
    sigma_line = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split()
            if parts[0] == "order":
                if order is not None:
                    raise ParseError("duplicate order line", lineno)
                try:
                    order = int(parts[1])
                except (IndexError, ValueError):
                    raise ParseError("order must be 'order n'", lineno) from None
                if order <= 0:
                    raise ParseError("order must be positive", lineno)
            elif parts[0] == "sigma":
                try:
                    sigma_perm = tuple(int(p) for p in parts[1:])
                except ValueError:
                    raise ParseError("sigma entries must be integers", lineno) from None
                sigma_line = lineno
            else:
                if order is None:
                    raise ParseError("expected 'order n' before table rows", lineno)
                try:
                    row = tuple(int(p) for p in parts)
                except ValueError:
                    raise ParseError("table entries must be integers", lineno) from None
                if len(row) != order:
                    raise ParseError(f"expected {order} entries, got {len(row)}", lineno)
                if any(not 0 <= v < order for v in row):
                    raise ParseError("table entry out of range", lineno)
                rows.append(row)
    if order is None:
        raise ParseError("missing 'order n' line")
    if len(rows) != order:
        raise ParseError(f"expected {order} table rows, got {len(rows)}")
    s = FiniteSemigroup(cayley=tuple(rows))
    report = validate(s)
    if report:
        kind, *witness = report[0]
        raise ParseError(f"{kind} violation at {tuple(witness)}")
    sigma = None
    if sigma_perm is not None:
        if sorted(sigma_perm) != list(range(order)):
            raise ParseError("sigma is not a permutation", sigma_line)
        sigma = InvolutiveAutomorphism("sigma", perm=sigma_perm)
        bad = validate_automorphism(s, sigma)
        if bad:
            kind, *witness = bad[0]
            raise ParseError(f"sigma fails {kind} at {tuple(witness)}", sigma_line)
    return s, sigma


def save_semigroup(path, s: FiniteSemigroup, sigma: InvolutiveAutomorphism | None = None):
    lines = [f"order {s.order}"]
    lines += [" ".join(map(str, row)) for row in s.cayley]
    if sigma is not None and sigma.perm is not None:
        lines.append("sigma " + " ".join(map(str, sigma.perm)))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# scalars and functions
# ---------------------------------------------------------------------------


def scalar_to_json(v):
    """[re, im]; exact rationals as fraction strings, floats as numbers."""
    if is_exact(v):
        if isinstance(v, (int, Fraction)):
            parts = (Fraction(v), Fraction(0))
        elif isinstance(v, Cyc):
            parts = v.rational_parts()
        else:
            parts = None  # no finite rational-complex form (e.g. ExpPoly)
        if parts is not None:
            return [str(parts[0]), str(parts[1])]
    z = complex(v)
    return [z.real, z.imag]


def scalar_from_json(pair):
    re, im = pair
    if isinstance(re, str) or isinstance(im, str):
        re, im = Fraction(str(re)), Fraction(str(im))
        if im == 0 and re.denominator == 1:
            return int(re)
        if im == 0:
            return re
        return Cyc.rational(re, im)
    return complex(re, im) if im else float(re)


def function_to_json(f: ScalarFunction):
    if f.values is not None:
        return [scalar_to_json(v) for v in f.values]
    if f.spec is None:
        raise ValueError("rule-defined function without a serializable spec")
    return f.spec


def function_from_json(fx: Fixture, data) -> ScalarFunction:
    if isinstance(data, list):
        if fx.carrier.is_finite:
            return ScalarFunction(fx.carrier, values=[scalar_from_json(p) for p in data])
        raise ParseError("dense values are only valid for finite fixtures")
    if isinstance(data, dict) and data.get("rule") == "support":
        table = {_element_from_json(x): scalar_from_json(v) for x, v in data["points"]}
        from .families import function_vanishing_on_products

        return function_vanishing_on_products(fx.carrier, table)
    return fx.function_from_spec(data)


def _element_from_json(x):
    return tuple(x) if isinstance(x, list) else x


# ---------------------------------------------------------------------------
# solution pairs
# ---------------------------------------------------------------------------


def pair_to_json(
    pair: SolutionPair, fixture_name: str, sigma_name: str, window: int | None = None
) -> dict:
    out = {
        "fixture": fixture_name,
        "sigma": sigma_name,
        "alpha": scalar_to_json(pair.alpha),
        "g": function_to_json(pair.g),
        "f": function_to_json(pair.f),
    }
    if window is not None:
        out["window"] = window
    if pair.provenance is not None:
        out["provenance"] = pair.provenance.as_params()
    return out


def pair_from_json(data: dict):
    """-> (fixture, sigma, SolutionPair)."""
    fx = get_fixture(data["fixture"], window=data.get("window"))
    sigma = fx.sigma(data["sigma"])
    alpha = scalar_from_json(data["alpha"])
    g = function_from_json(fx, data["g"])
    f = function_from_json(fx, data["f"])
    return fx, sigma, SolutionPair(g=g, f=f, alpha=alpha)


def save_pair(path, pair: SolutionPair, fixture_name: str, sigma_name: str, window=None):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pair_to_json(pair, fixture_name, sigma_name, window), fh, indent=2)
        fh.write("\n")


def load_pair(path):
    with open(path, encoding="utf-8") as fh:
        return pair_from_json(json.load(fh))
