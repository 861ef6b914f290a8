"""Numerical pattern Lagrangians.

For a pattern P = (m, E, R) the Lagrangian is the largest value of

    g(x) = lambda_E(x) / (1 - sum_{i in R} x_i^k)

over the simplex with basis vectors removed, where

    lambda_E(x) = k! * sum_{D in E} prod_i x_i^D(i) / D(i)!

Maximization is multi-start projected gradient ascent. The value is only
certified as a bracket: any g(x) is a lower bound, and p_n / C(n, k) from
the exact dynamic program is an upper bound for every n.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from .constructions import compositions, max_pn
from .pattern import Pattern, density_one_check, profile_coefficient, remove_index

log = logging.getLogger(__name__)

DENOMINATOR_FLOOR = 1e-9
BASIS_THRESHOLD = 1 - 1e-6
DEDUP_RADIUS = 1e-5


class DegenerateRecursionError(ValueError):
    """The recursive mass sum_{i in R} x_i^k is too close to 1."""


@dataclass
class LagrangianConfig:
    starts: int = 20            # best grid points refined by ascent
    random_starts: int = 50     # Dirichlet(1,...,1) seeds
    grid_resolution: int = 20   # subdivisions per coordinate
    tol: float = 1e-9           # stop once an accepted step moves less than this
    max_iter: int = 10000
    dp_n_for_upper: int | None = None  # None: largest n within dp_budget
    dp_budget: int = 200_000
    max_grid_points: int = 100_000
    seed: int = 0
    jobs: int = 1


class Polynomial:
    """lambda_E for one pattern, stored as coefficients and an exponent matrix."""

    def __init__(self, p: Pattern):
        self.k = p.k
        self.m = p.m
        self.coef = np.array([profile_coefficient(D) for D in p.E], dtype=float)
        self.exps = np.array(p.E, dtype=float).reshape(len(p.E), p.m)
        self.R = np.zeros(p.m, dtype=bool)
        self.R[list(p.R)] = True

    def value(self, x):
        x = np.asarray(x, dtype=float)
        if not len(self.coef):
            return np.zeros(x.shape[:-1]) if x.ndim > 1 else 0.0
        mono = np.prod(x[..., None, :] ** self.exps, axis=-1)
        return mono @ self.coef

    def gradient(self, x):
        x = np.asarray(x, dtype=float)
        grad = np.zeros(self.m)
        if not len(self.coef):
            return grad
        powers = x[None, :] ** self.exps
        for j in range(self.m):
            dj = self.exps[:, j]
            rest = powers.copy()
            rest[:, j] = x[j] ** np.maximum(dj - 1, 0)
            grad[j] = np.sum(self.coef * dj * np.prod(rest, axis=1))
        return grad

    def recursive_mass(self, x):
        x = np.asarray(x, dtype=float)
        return np.sum(np.where(self.R, x, 0.0) ** self.k, axis=-1)

    def g(self, x):
        """Eliminated objective; -inf where the denominator is degenerate."""
        denom = 1.0 - self.recursive_mass(x)
        lam = self.value(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(denom > DENOMINATOR_FLOOR, lam / np.where(denom > 0, denom, 1.0), -np.inf)
        return out if np.ndim(out) else float(out)

    def g_gradient(self, x):
        denom = 1.0 - self.recursive_mass(x)
        lam = self.value(x)
        dS = np.where(self.R, self.k * x ** (self.k - 1), 0.0)
        return (self.gradient(x) * denom + lam * dS) / denom**2


def _as_point(p: Pattern, x):
    x = np.asarray(x, dtype=float)
    if x.shape != (p.m,):
        raise ValueError(f"point has shape {x.shape}, pattern has m={p.m}")
    return x


def eval_lambda(p: Pattern, x) -> float:
    return float(Polynomial(p).value(_as_point(p, x)))


def grad_lambda(p: Pattern, x) -> np.ndarray:
    return Polynomial(p).gradient(_as_point(p, x))


def eval_g(p: Pattern, x) -> float:
    """lambda_E(x) / (1 - sum_{i in R} x_i^k); a lower bound on the Lagrangian."""
    poly = Polynomial(p)
    x = _as_point(p, x)
    denom = 1.0 - poly.recursive_mass(x)
    if denom < DENOMINATOR_FLOOR:
        raise DegenerateRecursionError(f"near-degenerate recursive mass: 1 - sum x_i^k = {denom:.3g}")
    return float(poly.value(x) / denom)


def project_simplex(v):
    """Euclidean projection onto {x >= 0, sum x = 1}."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    return np.maximum(v - css[rho] / (rho + 1), 0.0)


@dataclass
class AscentRun:
    x: np.ndarray
    value: float
    iterations: int
    converged: bool


def ascend(poly: Polynomial, x0, tol=1e-9, max_iter=10000) -> AscentRun:
    """Projected gradient ascent on g with Armijo backtracking.

    Stops when the projected gradient step vanishes below ``tol`` or when no
    strictly improving step remains (value stalled at rounding level).
    """
    x = project_simplex(np.asarray(x0, dtype=float))
    gx = poly.g(x)
    if not np.isfinite(gx):
        return AscentRun(x, gx, 0, False)
    t = 1.0
    for it in range(1, max_iter + 1):
        d = poly.g_gradient(x)
        if not np.all(np.isfinite(d)):
            return AscentRun(x, gx, it, False)
        if np.max(np.abs(project_simplex(x + d) - x)) < tol:
            return AscentRun(x, gx, it, True)
        while True:
            y = project_simplex(x + t * d)
            gy = poly.g(y)
            if np.isfinite(gy) and gy > gx and gy >= gx + 1e-4 * float(d @ (y - x)):
                break
            t *= 0.5
            if t < 1e-18:
                return AscentRun(x, gx, it, True)
        step = float(np.max(np.abs(y - x)))
        x, gx = y, gy
        if step < tol:
            return AscentRun(x, gx, it, True)
        t = min(2.0 * t, 1e3)
    return AscentRun(x, gx, max_iter, False)


def simplex_grid(m: int, resolution: int, max_points: int):
    """Grid points of the simplex with spacing 1/resolution, coarsened to fit."""
    while resolution > 1 and comb(resolution + m - 1, m - 1) > max_points:
        resolution -= 1
    pts = np.array(list(compositions(resolution, m)), dtype=float) / resolution
    return pts, resolution


def _run_starts(poly, starts, tol, max_iter):
    return [ascend(poly, s, tol, max_iter) for s in starts]


@dataclass
class StationarityReport:
    residuals: list
    max_residual: float
    min_coordinate: float


def stationarity_certificate(p: Pattern, x, lambda_value: float) -> StationarityReport:
    """|df/dx_j - k * lambda_value| for f = lambda_E + lambda_value * sum_{i in R} x_i^k."""
    poly = Polynomial(p)
    x = _as_point(p, x)
    df = poly.gradient(x) + lambda_value * np.where(poly.R, p.k * x ** (p.k - 1), 0.0)
    res = np.abs(df - p.k * lambda_value)
    return StationarityReport(
        [float(r) for r in res],
        float(np.max(res)) if len(res) else 0.0,
        float(np.min(x)) if len(x) else 0.0,
    )


@dataclass
class LagrangianResult:
    value: float
    maximizer: list
    stationarity_residual: float
    lower_bound: float
    upper_bound: float
    starts_used: int
    converged: bool = True
    certificate: str = "numeric"     # or "syntactic" for density-one patterns
    upper_n: int | None = None
    upper_exact: str | None = None   # p_n / C(n, k) as a fraction string
    maximizers: list = field(default_factory=list)
    min_coordinate: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def _upper_bound(p: Pattern, cfg: LagrangianConfig):
    n = cfg.dp_n_for_upper
    if n is None:
        # largest n whose DP work (compositions times profiles) stays in budget
        work, n = 0, None
        per = max(len(p.E), 1)
        for N in range(0, 61):
            work += comb(N + p.m - 1, p.m - 1) * per if p.m else 1
            if work > cfg.dp_budget:
                break
            if N >= p.k:
                n = N
    if n is None or n < p.k:
        return 1.0, None, None
    pn = max_pn(p, n).value
    from fractions import Fraction

    frac = Fraction(pn, comb(n, p.k))
    return min(1.0, float(frac)), n, str(frac)


def _density_one_index(p: Pattern) -> int:
    for i in range(p.m):
        if any(Y[i] == p.k for Y in p.E):
            return i
    for i in sorted(p.R):
        if any(Y[i] == p.k - 1 for Y in p.E):
            return i
    return 0


def maximize_lagrangian(p: Pattern, cfg: LagrangianConfig | None = None) -> LagrangianResult:
    cfg = cfg or LagrangianConfig()
    syntactic = density_one_check(p)
    if syntactic:
        # value one is attained (or approached) at a basis vector; no ascent needed
        i = _density_one_index(p)
        x = np.zeros(p.m)
        x[i] = 1.0
        return LagrangianResult(1.0, list(x), 0.0, 1.0, 1.0, 0, True, "syntactic",
                                None, "1", [list(x)], 0.0 if p.m > 1 else 1.0)
    upper, upper_n, upper_exact = _upper_bound(p, cfg)
    if p.m == 0 or not p.E or (p.m == 1 and p.R):
        x = np.full(p.m, 1.0 / p.m) if p.m else np.zeros(0)
        return LagrangianResult(0.0, list(x), 0.0, 0.0, upper, 0, True, "numeric",
                                upper_n, upper_exact, [list(x)] if p.m else [], float(min(x, default=0.0)))

    poly = Polynomial(p)
    grid, _ = simplex_grid(p.m, cfg.grid_resolution, cfg.max_grid_points)
    gvals = poly.g(grid)
    order = np.lexsort((np.arange(len(grid)), -gvals))
    seeds = [grid[i] for i in order[: cfg.starts] if np.isfinite(gvals[i])]
    rng = np.random.default_rng(cfg.seed)
    seeds += list(rng.dirichlet(np.ones(p.m), size=cfg.random_starts))

    if cfg.jobs > 1 and len(seeds) > 1:
        chunks = [seeds[i::cfg.jobs] for i in range(cfg.jobs)]
        with ProcessPoolExecutor(cfg.jobs) as pool:
            parts = list(pool.map(_run_starts, [poly] * len(chunks), chunks,
                                  [cfg.tol] * len(chunks), [cfg.max_iter] * len(chunks)))
        # undo the round-robin split so the reduction sees seed order
        runs = [None] * len(seeds)
        for c, part in enumerate(parts):
            for j, run in enumerate(part):
                runs[c + j * cfg.jobs] = run
    else:
        runs = _run_starts(poly, seeds, cfg.tol, cfg.max_iter)

    runs = [r for r in runs if np.isfinite(r.value)]
    interior = [r for r in runs if np.max(r.x) <= BASIS_THRESHOLD]
    pool_runs = interior or runs
    if not pool_runs:
        raise DegenerateRecursionError("no start produced a finite objective value")
    best_value = max(r.value for r in pool_runs)
    near = [r for r in pool_runs if r.value >= best_value - 1e-10]
    near.sort(key=lambda r: tuple(np.round(r.x, 6)))
    best = near[0]

    maximizers = []
    for r in near:
        if all(np.max(np.abs(r.x - q)) > DEDUP_RADIUS for q in maximizers):
            maximizers.append(r.x)

    value = best.value
    cert = stationarity_certificate(p, best.x, value)
    converged = best.converged
    if not converged:
        log.warning("ascent hit the iteration cap; reporting best-so-far")
    return LagrangianResult(
        value=float(value),
        maximizer=[float(v) for v in best.x],
        stationarity_residual=cert.max_residual,
        lower_bound=float(best.value),
        upper_bound=float(upper),
        starts_used=len(seeds),
        converged=converged,
        certificate="numeric",
        upper_n=upper_n,
        upper_exact=upper_exact,
        maximizers=[[float(v) for v in q] for q in maximizers],
        min_coordinate=cert.min_coordinate,
    )


@dataclass
class MinimalityReport:
    minimal: bool
    margins: list
    value: float
    converged: bool


def is_minimal(p: Pattern, tol: float = 1e-6, cfg: LagrangianConfig | None = None) -> MinimalityReport:
    """Decide whether removing any part strictly lowers the Lagrangian."""
    full = maximize_lagrangian(p, cfg)
    margins, converged = [], full.converged
    for i in range(p.m):
        sub = maximize_lagrangian(remove_index(p, i), cfg)
        converged = converged and sub.converged
        margins.append(full.value - sub.value)
    return MinimalityReport(all(d > tol for d in margins), margins, full.value, converged)
