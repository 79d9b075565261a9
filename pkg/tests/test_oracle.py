import math

import numpy as np
import pytest

from diracosc.model import FieldConfiguration, StateIndex, SymmetryLimit
from diracosc.oracle import (
    GridTooCoarse,
    NoSignChange,
    OracleComparison,
    RadialGrid,
    _single_grid_eigenvalue,
    compare,
    default_grid,
    fd_eigenvalue,
    self_consistent_energy,
    sturm_count,
)
from diracosc.spectrum import SearchWindow, find_states

PS = SymmetryLimit.PSEUDOSPIN
SP = SymmetryLimit.SPIN
BARE = FieldConfiguration(M=1, a=1, b=0, B=0, phi_AB=0)


def exact_mu(P: float, D: float, n: int) -> float:
    return 2.0 * math.sqrt(P) * (2 * n + 1 + math.sqrt(D + 0.25))


def test_fd_eigenvalue_reduced_oscillator():
    grid = default_grid(1.0)
    assert abs(fd_eigenvalue(1.0, 0.0, grid, 0) - 3.0) < 1e-8
    assert abs(fd_eigenvalue(1.0, 0.0, grid, 1) - 7.0) < 1e-8
    assert abs(fd_eigenvalue(1.0, 0.75, grid, 0) - 4.0) < 1e-6


def test_fd_eigenvalue_verify_index_path():
    grid = RadialGrid(12.0, 1500)
    mu = fd_eigenvalue(2.0, 0.75, grid, 2, verify_index=True)
    assert abs(mu - exact_mu(2.0, 0.75, 2)) < 1e-5


def test_fd_eigenvalue_validation():
    grid = RadialGrid(12.0, 200)
    with pytest.raises(ValueError):
        fd_eigenvalue(0.0, 0.0, grid, 0)
    with pytest.raises(ValueError):
        fd_eigenvalue(1.0, -0.3, grid, 0)
    with pytest.raises(ValueError):
        fd_eigenvalue(1.0, 0.0, grid, -1)
    with pytest.raises(ValueError):
        RadialGrid(12.0, 99)
    with pytest.raises(ValueError):
        RadialGrid(0.0, 500)


def test_grid_convergence_is_second_order():
    # |mu(h) - mu(h/2)| shrinks by ~4x per refinement on the P=1, D=0 instance
    mus = {}
    for pts in (500, 1001, 2003):
        mus[pts], _, _ = _single_grid_eigenvalue(1.0, 0.0, 12.0, pts, 0)
    d1 = abs(mus[500] - mus[1001])
    d2 = abs(mus[1001] - mus[2003])
    assert 3.0 < d1 / d2 < 5.0


def test_sturm_count_brackets_index():
    # eigenvalue index equals the count of eigenvalues strictly below it
    pts = 800
    h = 12.0 / (pts + 1)
    r = np.arange(1, pts + 1) * h
    diag = 2.0 / h**2 + r * r
    off2 = (1.0 / h**2) ** 2
    for n in (0, 1, 3):
        mu, _, _ = _single_grid_eigenvalue(1.0, 0.0, 12.0, pts, n)
        assert sturm_count(diag, off2, mu - 1e-8) == n
        assert sturm_count(diag, off2, mu + 1e-8) == n + 1


def test_grid_too_coarse():
    # wavefunction scale 1/P^(1/4) far below h: the two grids disagree wildly
    with pytest.raises(GridTooCoarse):
        fd_eigenvalue(1e8, 0.0, RadialGrid(12.0, 100), 0)


def test_truncation_radius_is_converged():
    # doubling r_max (at fixed h) leaves the eigenvalue unchanged to
    # far below the agreement threshold: Dirichlet truncation error is
    # exponentially small for Gaussian-decaying states
    base = fd_eigenvalue(1.0, 0.75, RadialGrid(12.0, 3000), 1)
    wide = fd_eigenvalue(1.0, 0.75, RadialGrid(24.0, 6001), 1)
    assert abs(base - wide) < 1e-8


def test_self_consistent_matches_analytic_with_fields():
    cfg = FieldConfiguration(M=1, a=1, b=1, B=2, phi_AB=math.pi)
    state = find_states(cfg, PS, StateIndex(0, 1), SearchWindow(1.1, 21.0))[0]
    grid = default_grid(state.p_tilde**2)
    E_fd = self_consistent_energy(cfg, PS, StateIndex(0, 1), grid, (state.E - 0.2, state.E + 0.2))
    assert abs(E_fd - state.E) <= 1e-6


def test_self_consistent_matches_analytic_bare_m1():
    # b = 0, m = 1: D = 3/4, regular at the origin
    state = find_states(BARE, SP, StateIndex(0, 1), SearchWindow(1.0001, 10.0))[0]
    grid = default_grid(state.p_tilde**2)
    E_fd = self_consistent_energy(BARE, SP, StateIndex(0, 1), grid, (state.E - 0.2, state.E + 0.2))
    assert abs(E_fd - state.E) <= 1e-6


@pytest.mark.xfail(
    strict=True,
    reason="delta = -1/4 exactly (b = 0, m = 0) is the critical inverse-square "
    "coupling: the reduced solution goes like sqrt(r) at the origin and the "
    "uniform 3-point scheme converges only ~1/ln(1/h) there, so the 1e-6 "
    "match is unreachable at any practical resolution",
)
def test_self_consistent_bare_m0_n0_critical():
    state = find_states(BARE, SP, StateIndex(0, 0), SearchWindow(1.0001, 10.0))[0]
    grid = default_grid(state.p_tilde**2)
    E_fd = self_consistent_energy(BARE, SP, StateIndex(0, 0), grid, (state.E - 0.3, state.E + 0.3))
    assert abs(E_fd - state.E) <= 1e-6


@pytest.mark.xfail(
    strict=True,
    reason="same critical-coupling limitation as the n = 0 case",
)
def test_self_consistent_bare_m0_n1_critical():
    state = find_states(BARE, SP, StateIndex(1, 0), SearchWindow(1.0001, 10.0))[0]
    grid = default_grid(state.p_tilde**2)
    E_fd = self_consistent_energy(BARE, SP, StateIndex(1, 0), grid, (state.E - 0.3, state.E + 0.3))
    assert abs(E_fd - state.E) <= 1e-6


def test_self_consistent_critical_coupling_is_systematically_high():
    # documents the measured size of the critical-coupling defect
    state = find_states(BARE, SP, StateIndex(0, 0), SearchWindow(1.0001, 10.0))[0]
    grid = default_grid(state.p_tilde**2)
    E_fd = self_consistent_energy(BARE, SP, StateIndex(0, 0), grid, (state.E - 0.3, state.E + 0.3))
    assert 1e-3 < abs(E_fd - state.E) < 0.5


def test_no_sign_change():
    grid = RadialGrid(12.0, 500)
    with pytest.raises(NoSignChange):
        self_consistent_energy(BARE, SP, StateIndex(0, 0), grid, (1.05, 1.5))


def test_compare_regression_entry():
    cfg = FieldConfiguration(M=1, a=1, b=1, B=0.5, phi_AB=0.6)
    reports = compare(cfg, SP, StateIndex(0, 0), None, SearchWindow(1.1, 21.0))
    assert len(reports) == 1
    rep = reports[0]
    assert rep.analytic_E is not None and rep.oracle_E is not None
    assert rep.abs_diff <= 1e-6


def test_compare_absent_in_both():
    reports = compare(BARE, SP, StateIndex(0, 0), RadialGrid(12.0, 500), SearchWindow(1.05, 1.5))
    assert reports == [OracleComparison(None, None, None)]


def test_wrong_symmetry_negative_control():
    # analytic level from the spin problem, oracle run with pseudospin
    # coefficients: the mismatch must be far outside the agreement threshold
    spin_E = find_states(BARE, SP, StateIndex(0, 0), SearchWindow(1.0001, 10.0))[0].E
    grid = RadialGrid(12.0, 1500)
    E_wrong = self_consistent_energy(BARE, PS, StateIndex(0, 0), grid, (1.5, 2.2))
    assert abs(E_wrong - spin_E) > 0.1
