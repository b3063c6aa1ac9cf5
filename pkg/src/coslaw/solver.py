"""Numerical enumeration of solutions on small finite carriers.

The n^2 equations g(x sigma(y)) - g(x)g(y) + f(x)f(y) - alpha f(x sigma(y)) = 0
form a quadratic (holomorphic) system in the 2n complex unknowns
(g, f).  Damped Gauss-Newton runs from a batch of random starts (each
component uniform in the complex disk of radius 3) plus deterministic
starts seeded by every family construction available on the carrier; the
least-squares Newton direction on the complexified system coincides with
the one on the realified system because no conjugates appear.

Solutions lying on positive-dimensional components (families 1-3 and the
q-parametrized curves) are returned through whichever converged
representatives survive deduplication, flagged rank-deficient via the
Jacobian's smallest singular value.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .analysis import classify, residual
from .families import FamilyDescriptor, InvalidDescriptor, construct, function_vanishing_on_products
from .functions import ScalarFunction, even_characters, nonzero_characters
from .semigroups import FiniteSemigroup, InvolutiveAutomorphism, product_set

RANK_TOL = 1e-6
START_RADIUS = 3.0


@dataclass(frozen=True)
class SolverConfig:
    max_order: int = 4
    restarts: int = 2000
    newton_tol: float = 1e-12
    newton_max_iters: int = 100
    dedup_radius: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        for name in ("max_order", "restarts", "newton_tol", "newton_max_iters", "dedup_radius"):
            if getattr(self, name) <= 0:
                raise ValueError(f"SolverConfig.{name} must be positive")


@dataclass(frozen=True)
class SolvedEntry:
    g_values: tuple
    f_values: tuple
    residual: float
    rank_deficient: bool

    def as_pair(self, s: FiniteSemigroup, alpha):
        from .families import SolutionPair

        return SolutionPair(
            g=ScalarFunction(s, values=list(self.g_values)),
            f=ScalarFunction(s, values=list(self.f_values)),
            alpha=alpha,
        )

    def vector(self) -> np.ndarray:
        return np.array(self.g_values + self.f_values)


@dataclass(frozen=True)
class SolutionSet:
    entries: tuple[SolvedEntry, ...]
    alpha: complex
    order: int

    def __len__(self):
        return len(self.entries)

    def to_json_lines(self) -> str:
        lines = []
        for e in self.entries:
            lines.append(
                json.dumps(
                    {
                        "g": [[v.real, v.imag] for v in e.g_values],
                        "f": [[v.real, v.imag] for v in e.f_values],
                        "residual": e.residual,
                        "rank_deficient": e.rank_deficient,
                    }
                )
            )
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# batched Gauss-Newton
# ---------------------------------------------------------------------------


class _System:
    def __init__(self, s: FiniteSemigroup, sigma: InvolutiveAutomorphism, alpha: complex):
        n = s.order
        self.n = n
        self.alpha = alpha
        P, X, Y = [], [], []
        for x, y in itertools.product(range(n), repeat=2):
            P.append(s.cayley[x][sigma(y)])
            X.append(x)
            Y.append(y)
        eye = np.eye(n)
        self.P, self.X, self.Y = np.array(P), np.array(X), np.array(Y)
        self.EP, self.EX, self.EY = eye[self.P], eye[self.X], eye[self.Y]

    def res(self, vals: np.ndarray) -> np.ndarray:
        """(m, n^2) defects for a batch of value rows (g | f)."""
        n = self.n
        G, F = vals[:, :n], vals[:, n:]
        return (
            G[:, self.P]
            - G[:, self.X] * G[:, self.Y]
            + F[:, self.X] * F[:, self.Y]
            - self.alpha * F[:, self.P]
        )

    def jac(self, vals: np.ndarray) -> np.ndarray:
        """(m, n^2, 2n) holomorphic Jacobian."""
        n = self.n
        G, F = vals[:, :n], vals[:, n:]
        dG = (
            self.EP[None, :, :]
            - self.EX[None, :, :] * G[:, self.Y][:, :, None]
            - self.EY[None, :, :] * G[:, self.X][:, :, None]
        )
        dF = (
            self.EX[None, :, :] * F[:, self.Y][:, :, None]
            + self.EY[None, :, :] * F[:, self.X][:, :, None]
            - self.alpha * self.EP[None, :, :]
        )
        return np.concatenate([dG, dF], axis=2)


def _gauss_newton(system: _System, starts: np.ndarray, cfg: SolverConfig) -> np.ndarray:
    """Value rows whose final max-norm residual is <= newton_tol.

    Rows keep polishing past the tolerance until damping can no longer
    reduce the residual norm: near quadratic tangencies (e.g. around the
    zero solution) a residual of newton_tol still allows a distance of
    sqrt(newton_tol) from the solution variety, and the extra iterations
    pull such points onto it.
    """
    vals = starts.astype(complex)
    m = vals.shape[0]
    active = np.ones(m, dtype=bool)
    for _ in range(cfg.newton_max_iters):
        if not active.any():
            break
        idx = np.where(active)[0]
        Ei = system.res(vals[idx])
        J = system.jac(vals[idx])
        JH = J.conj().transpose(0, 2, 1)
        A = JH @ J
        b = -(JH @ Ei[:, :, None])[:, :, 0]
        ridge = 1e-14 * np.eye(A.shape[1])
        try:
            step = np.linalg.solve(A + ridge, b[:, :, None])[:, :, 0]
        except np.linalg.LinAlgError:
            step = np.stack(
                [np.linalg.lstsq(J[i], -Ei[i], rcond=None)[0] for i in range(len(idx))]
            )
        old_ss = (np.abs(Ei) ** 2).sum(axis=1)
        t = np.ones(len(idx))
        improved = np.zeros(len(idx), dtype=bool)
        best = vals[idx].copy()
        for _halve in range(40):
            cand = vals[idx] + t[:, None] * step
            new_ss = (np.abs(system.res(cand)) ** 2).sum(axis=1)
            better = ~improved & (new_ss < old_ss)
            best[better] = cand[better]
            improved |= better
            if improved.all():
                break
            t = np.where(improved, t, t / 2)
        vals[idx] = best
        # no improving step exists: either at a solution (kept by the final
        # residual filter) or at a local minimum of the norm (discarded there)
        active[idx[~improved]] = False
    final = np.abs(system.res(vals)).max(axis=1)
    return vals[final <= cfg.newton_tol]


# ---------------------------------------------------------------------------
# deterministic family-seeded starts
# ---------------------------------------------------------------------------


def _pair_vector(pair, n: int) -> np.ndarray:
    g = [complex(pair.g(x)) for x in range(n)]
    f = [complex(pair.f(x)) for x in range(n)]
    return np.array(g + f)


def _family_seeds(
    s: FiniteSemigroup,
    sigma: InvolutiveAutomorphism,
    alpha: complex,
    rng: np.random.Generator,
) -> list[np.ndarray]:
    n = s.order
    seeds = [np.zeros(2 * n, dtype=complex)]
    evens = even_characters(s, sigma)
    others = nonzero_characters(s)

    def try_build(d: FamilyDescriptor, free=None):
        try:
            seeds.append(_pair_vector(construct(s, sigma, d, free_f=free), n))
        except InvalidDescriptor:
            pass

    f_rand = ScalarFunction(s, values=(1 + 0.5 * _disk(rng, n)).tolist())
    try_build(FamilyDescriptor(1, alpha), free=f_rand)

    outside = sorted(set(range(n)) - product_set(s, range(n)))
    if outside:
        supports = [{x: 1.0} for x in outside] + [{x: 1.0 for x in outside}]
        for sup in supports:
            gfun = function_vanishing_on_products(s, sup)
            try_build(FamilyDescriptor(2, alpha), free=gfun)
            try_build(FamilyDescriptor(3, alpha), free=gfun)

    q_grid = [0, 1, -alpha, alpha, 2 + 0.5j]
    for chi in evens:
        for q in q_grid:
            for branch in (1, -1):
                try_build(FamilyDescriptor(4, alpha, q=q, branch=branch, chi=chi))
    for chi1, chi2 in itertools.combinations(evens, 2):
        for q in q_grid:
            for branch in (1, -1):
                try_build(
                    FamilyDescriptor(5, alpha, q=q, branch=branch, chi1=chi1, chi2=chi2)
                )
    for chi1, chi2 in itertools.permutations(evens, 2):
        try_build(FamilyDescriptor(6, alpha, chi1=chi1, chi2=chi2))
    for chi in others:
        try_build(FamilyDescriptor(8, alpha, chi=chi))
    return seeds


def _disk(rng: np.random.Generator, size: int, radius: float = START_RADIUS) -> np.ndarray:
    r = radius * np.sqrt(rng.random(size))
    theta = 2 * np.pi * rng.random(size)
    return r * np.exp(1j * theta)


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def find_solutions(
    s: FiniteSemigroup,
    sigma: InvolutiveAutomorphism,
    alpha,
    cfg: SolverConfig | None = None,
) -> SolutionSet:
    """All converged, deduplicated solutions from seeded + random starts.

    Every returned entry re-verifies through the analysis module at the
    Newton tolerance.  Random starts come from numpy's default generator
    (PCG64) seeded with cfg.seed, so a fixed config gives an identical
    SolutionSet.
    """
    cfg = cfg or SolverConfig()
    if not s.is_finite:
        raise TypeError("the solver needs a finite carrier")
    if s.order > cfg.max_order:
        raise ValueError(f"order {s.order} exceeds SolverConfig.max_order {cfg.max_order}")
    alpha_c = complex(alpha)
    n = s.order
    rng = np.random.default_rng(cfg.seed)
    seeds = _family_seeds(s, sigma, alpha_c, rng)
    randoms = _disk(rng, (cfg.restarts, 2 * n))
    starts = np.vstack([np.array(seeds), randoms])
    system = _System(s, sigma, alpha_c)
    sols = _gauss_newton(system, starts, cfg)
    kept = _dedup(sols, cfg.dedup_radius)
    entries = []
    for row in kept:
        g_values = tuple(row[:n])
        f_values = tuple(row[n:])
        gfn = ScalarFunction(s, values=list(g_values))
        ffn = ScalarFunction(s, values=list(f_values))
        rep = residual(s, sigma, alpha_c, gfn, ffn)
        if rep.max_residual > cfg.newton_tol:
            continue  # independent re-verification failed
        J = system.jac(row[None, :])[0]
        sv = np.linalg.svd(J, compute_uv=False)
        # fewer equations than unknowns leaves implicit zero singular values
        deficient = len(sv) < 2 * n or sv[-1] <= RANK_TOL * max(1.0, sv[0])
        entries.append(
            SolvedEntry(
                g_values=g_values,
                f_values=f_values,
                residual=rep.max_residual,
                rank_deficient=bool(deficient),
            )
        )
    return SolutionSet(entries=tuple(entries), alpha=alpha_c, order=n)


def _dedup(sols: np.ndarray, radius: float) -> np.ndarray:
    if len(sols) == 0:
        return sols
    keys = []
    for col in range(sols.shape[1] - 1, -1, -1):
        keys.append(sols[:, col].imag)
        keys.append(sols[:, col].real)
    order = np.lexsort(keys)
    sols = sols[order]
    kept: list[np.ndarray] = []
    for row in sols:
        if all(np.abs(row - k).max() >= radius for k in kept):
            kept.append(row)
    return np.array(kept)


@dataclass(frozen=True)
class CompletenessReport:
    total: int
    tags: dict = field(compare=False)
    unclassified: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.unclassified


def completeness_check(
    s: FiniteSemigroup,
    sigma: InvolutiveAutomorphism,
    alpha,
    cfg: SolverConfig | None = None,
) -> CompletenessReport:
    """Every numerically found solution must classify into some family."""
    sols = find_solutions(s, sigma, alpha, cfg)
    tags: dict = {}
    unclassified = []
    for e in sols.entries:
        pair = e.as_pair(s, complex(alpha))
        result = classify(s, sigma, complex(alpha), pair.g, pair.f)
        tags[result.family_tag] = tags.get(result.family_tag, 0) + 1
        if not result.classified:
            unclassified.append(e)
    return CompletenessReport(total=len(sols), tags=tags, unclassified=tuple(unclassified))
