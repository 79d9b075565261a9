"""Independent finite-difference eigensolver for cross-checking the
analytic spectrum.

At fixed trial energy E the radial equation is a linear Sturm-Liouville
problem: -u'' + (P r^2 + D / r^2) u = mu u on (0, r_max) with Dirichlet
boundaries.  The analytic bound-state condition is equivalent to the
self-consistency requirement

    mu_n(P(E), D(E)) = E^2 - M^2 - gamma,

with gamma the energy-independent field cross term, so resolving that in E
by bisection recovers the nonlinear eigenvalue without touching the
polynomial machinery of the analytic route.

Discretization: 3-point Laplacian with the potential evaluated at the grid
nodes (the grid excludes r = 0, so no origin regularization is needed);
eigenvalue-by-index via tridiagonal bisection; Richardson extrapolation
(4 mu_{h/2} - mu_h) / 3 over the nested grids h and h/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from . import model
from .model import Admissibility, FieldConfiguration, StateIndex, SymmetryLimit
from .spectrum import SearchWindow, find_states


class GridTooCoarse(RuntimeError):
    """The h and h/2 discretizations disagree about the requested level."""


class NoSignChange(RuntimeError):
    """The self-consistency function does not change sign in the window."""


@dataclass(frozen=True)
class RadialGrid:
    """Uniform interior grid; r = 0 and r = r_max are Dirichlet boundaries."""

    r_max: float
    points: int

    def __post_init__(self) -> None:
        if not self.r_max > 0.0:
            raise ValueError(f"r_max must be > 0, got {self.r_max}")
        if self.points < 100:
            raise ValueError(f"points must be >= 100, got {self.points}")

    @property
    def h(self) -> float:
        return self.r_max / (self.points + 1)


def default_grid(P: float, points: int = 6000) -> RadialGrid:
    """Truncation radius max(8/sqrt(P), 12): exponentially small tail error
    for the Gaussian-decaying states, generous for weak confinement."""
    return RadialGrid(r_max=max(8.0 / math.sqrt(P), 12.0), points=points)


def sturm_count(diag: np.ndarray, off2: float, x: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix below x.

    Standard LDL^T pivot sign count; off2 is the squared (constant)
    off-diagonal entry.
    """
    count = 0
    d = 1.0
    first = True
    for a in diag:
        d = (a - x) if first else (a - x) - off2 / d
        first = False
        if d == 0.0:
            d = -1e-300
        if d < 0.0:
            count += 1
    return count


def _single_grid_eigenvalue(P: float, D: float, r_max: float, points: int, n: int):
    h = r_max / (points + 1)
    r = np.arange(1, points + 1) * h
    diag = 2.0 / (h * h) + P * r * r + D / (r * r)
    off = np.full(points - 1, -1.0 / (h * h))
    mu = eigvalsh_tridiagonal(diag, off, select="i", select_range=(n, n))
    return float(mu[0]), diag, -1.0 / (h * h)


def fd_eigenvalue(
    P: float, D: float, grid: RadialGrid, n: int, verify_index: bool = False
) -> float:
    """(n+1)-th smallest eigenvalue of the discretized operator,
    Richardson-extrapolated from the grids h and h/2.

    With verify_index=True the eigenvalue index is re-checked against Sturm
    counts on both grids (slower; meant for final answers, not inner loops).
    """
    if not P > 0.0:
        raise ValueError(f"P must be > 0, got {P}")
    if D < -0.25:
        raise ValueError(f"D must be >= -1/4, got {D}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    mu_h, diag_h, off_h = _single_grid_eigenvalue(P, D, grid.r_max, grid.points, n)
    fine = 2 * grid.points + 1  # nested grid with spacing h/2
    mu_f, diag_f, off_f = _single_grid_eigenvalue(P, D, grid.r_max, fine, n)
    if abs(mu_h - mu_f) > 0.1 * (1.0 + abs(mu_f)):
        raise GridTooCoarse(
            f"h and h/2 eigenvalues disagree: {mu_h} vs {mu_f} (n = {n})"
        )
    if verify_index:
        eps = 1e-8 * (1.0 + abs(mu_f))
        below = sturm_count(diag_f, off_f * off_f, mu_f - eps)
        above = sturm_count(diag_f, off_f * off_f, mu_f + eps)
        if below != n or above < n + 1:
            raise GridTooCoarse(
                f"fine-grid Sturm count brackets index [{below}, {above}) instead of {n}"
            )
        coarse = sturm_count(diag_h, off_h * off_h, mu_f + eps)
        if coarse not in (n, n + 1):
            raise GridTooCoarse(
                f"coarse-grid Sturm count {coarse} inconsistent with index {n}"
            )
    return (4.0 * mu_f - mu_h) / 3.0


def _cross_term(cfg: FieldConfiguration, m: int) -> float:
    """gamma = e^2 B phi_AB / (2 pi c^2) - e m B / (2 c); q = gamma - (E^2 - M^2)."""
    return (
        cfg.e**2 * cfg.B * cfg.phi_AB / (2.0 * math.pi * cfg.c**2)
        - cfg.e * m * cfg.B / (2.0 * cfg.c)
    )


def self_consistent_energy(
    cfg: FieldConfiguration,
    sym: SymmetryLimit,
    idx: StateIndex,
    grid: RadialGrid,
    window: tuple[float, float],
    tol: float = 1e-8,
) -> float:
    """Root of G(E) = mu_n(P(E), D(E)) - (E^2 - M^2 - gamma) by bisection.

    The window must bracket exactly one root (callers isolate brackets with
    the analytic scan); both endpoints must be admissible energies.
    """
    gamma = _cross_term(cfg, idx.m)

    def G(E: float) -> float:
        coeffs = model.reduced_coefficients(cfg, sym, idx.m, E)
        if model.admissible(coeffs) is not Admissibility.ADMISSIBLE:
            raise ValueError(f"window reaches inadmissible energy E = {E}")
        mu = fd_eigenvalue(coeffs.p2, coeffs.delta, grid, idx.n)
        return mu - (E * E - cfg.M**2 - gamma)

    lo, hi = window
    glo = G(lo)
    ghi = G(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0.0:
        raise NoSignChange(f"G has no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        gmid = G(mid)
        if gmid == 0.0:
            lo = hi = mid
            break
        if glo * gmid < 0.0:
            hi, ghi = mid, gmid
        else:
            lo, glo = mid, gmid
    root = 0.5 * (lo + hi)
    # final index verification at the converged energy
    coeffs = model.reduced_coefficients(cfg, sym, idx.m, root)
    fd_eigenvalue(coeffs.p2, coeffs.delta, grid, idx.n, verify_index=True)
    return root


@dataclass(frozen=True)
class OracleComparison:
    """Paired analytic / finite-difference result for one root (None marks
    a state absent on that side)."""

    analytic_E: float | None
    oracle_E: float | None
    abs_diff: float | None


def compare(
    cfg: FieldConfiguration,
    sym: SymmetryLimit,
    idx: StateIndex,
    grid: RadialGrid | None,
    window: SearchWindow,
) -> list[OracleComparison]:
    """Run both solvers over the window; one comparison per analytic root.

    No threshold is enforced here, this is reporting only.  With grid=None a
    default grid is sized per root from P at that root.
    """
    analytic = find_states(cfg, sym, idx, window)
    if not analytic:
        g = grid if grid is not None else RadialGrid(12.0, 6000)
        try:
            oracle_E = self_consistent_energy(
                cfg, sym, idx, g, (window.e_min, window.e_max)
            )
        except (NoSignChange, ValueError, GridTooCoarse):
            return [OracleComparison(None, None, None)]
        return [OracleComparison(None, oracle_E, None)]

    reports = []
    for i, state in enumerate(analytic):
        half = 0.1
        if i > 0:
            half = min(half, 0.45 * (state.E - analytic[i - 1].E))
        if i + 1 < len(analytic):
            half = min(half, 0.45 * (analytic[i + 1].E - state.E))
        bracket = _admissible_bracket(cfg, sym, idx.m, state.E, half)
        g = grid if grid is not None else default_grid(state.p_tilde**2)
        try:
            oracle_E = self_consistent_energy(cfg, sym, idx, g, bracket)
        except NoSignChange:
            reports.append(OracleComparison(state.E, None, None))
            continue
        reports.append(OracleComparison(state.E, oracle_E, abs(state.E - oracle_E)))
    return reports


def _admissible_bracket(
    cfg: FieldConfiguration, sym: SymmetryLimit, m: int, E: float, half: float
) -> tuple[float, float]:
    """Shrink [E-half, E+half] until both endpoints are admissible."""
    for _ in range(60):
        ok = True
        for end in (E - half, E + half):
            try:
                coeffs = model.reduced_coefficients(cfg, sym, m, end)
            except model.ExcludedEnergy:
                ok = False
                break
            if model.admissible(coeffs) is not Admissibility.ADMISSIBLE:
                ok = False
                break
        if ok:
            return (E - half, E + half)
        half *= 0.5
    raise ValueError(f"could not build an admissible bracket around E = {E}")
