import numpy as np
import pytest

from uinf.monopole import (
    SECOND_LINE_COEFFS,
    MonopoleProfile,
    RadialGrid,
    bogomolnyi_residuals,
    bps_profile,
    convergence_check,
    cutoff_growth,
    energy_breakdown,
    energy_scan,
    fd1,
    fd2,
    functional_gradient,
    gaussian_bump,
    perturb_profile,
    perturbation_report,
    physical_energy,
    second_line_integral,
    sine_bump,
    solve_perturbation,
    tail_estimate,
    variational_check,
)

FROZEN_COMPLETED = 0.9999999728587856
FROZEN_SECOND_LINE = 413879.65593081695
FROZEN_MIN_SV = 0.0026025270674390087


def test_radial_grid_validation():
    with pytest.raises(ValueError):
        RadialGrid(-1.0, 100)
    with pytest.raises(ValueError):
        RadialGrid(10.0, 8)
    grid = RadialGrid(20.0, 200)
    assert grid.h == pytest.approx(0.1)
    assert grid.xi[0] == pytest.approx(grid.h)
    assert grid.xi[-1] == pytest.approx(20.0)


@pytest.mark.parametrize("deriv,order", [(fd1, 1), (fd2, 2)])
def test_stencils_exact_on_quartics(deriv, order):
    """Fourth order stencils reproduce polynomial derivatives to rounding."""
    h = 0.05
    x = np.arange(60) * h
    coef = np.array([0.3, -1.2, 0.7, 0.4, -0.1])
    p = np.polynomial.Polynomial(coef)
    expected = p.deriv(order)(x)
    got = deriv(p(x), h)
    np.testing.assert_allclose(got, expected, atol=1e-10)


def test_hedgehog_solves_first_order_system(reference_profile):
    rk, rh = bogomolnyi_residuals(reference_profile)
    assert np.max(np.abs(rk)) < 1e-8
    assert np.max(np.abs(rh)) < 1e-8


def test_hedgehog_boundary_behavior(reference_profile):
    K = reference_profile.K
    H = reference_profile.H
    xi = reference_profile.grid.xi
    assert K[0] == pytest.approx(1.0, abs=1e-4)
    assert abs(K[-1]) < 1e-9
    assert H[0] == pytest.approx(0.0, abs=1e-4)
    assert H[-1] == pytest.approx(xi[-1] - 1.0, rel=1e-9)


def test_energy_breakdown_frozen(reference_profile):
    evb = energy_breakdown(reference_profile)
    assert evb.completed == pytest.approx(FROZEN_COMPLETED, rel=1e-12)
    assert abs(evb.completed - 1.0) < 1e-7
    assert evb.squared_form_integral < 1e-15
    assert abs(evb.rearrangement_gap) < 1e-9
    assert evb.tail == pytest.approx(tail_estimate(25.0))
    assert evb.raw_integral + evb.tail == pytest.approx(evb.completed)


def test_energy_minimum_under_perturbations(reference_profile):
    for seed in range(10):
        rng = np.random.default_rng(seed)
        bumped = perturb_profile(reference_profile, rng)
        assert energy_breakdown(bumped).completed >= FROZEN_COMPLETED - 1e-12


def test_functional_gradient_small_at_minimum(reference_profile):
    gK, gH = functional_gradient(reference_profile)
    assert np.max(np.abs(gK)) < 1e-7
    assert np.max(np.abs(gH)) < 1e-7


def test_variational_identity(reference_profile):
    out = variational_check(reference_profile, rng=np.random.default_rng(0), pairs=10)
    assert out["pairs"] == 10
    assert out["max_rel_error"] < 1e-7


def test_second_line_integral_frozen(reference_profile):
    assert second_line_integral(reference_profile) == pytest.approx(
        FROZEN_SECOND_LINE, rel=1e-12
    )


def test_second_line_coefficients_are_immutable_defaults(reference_profile):
    """Passing the published coefficients explicitly changes nothing."""
    explicit = second_line_integral(reference_profile, dict(SECOND_LINE_COEFFS))
    assert explicit == pytest.approx(FROZEN_SECOND_LINE, rel=1e-15)
    with pytest.raises(ValueError):
        second_line_integral(reference_profile, {"h2_kprime2": 15, "bogus": 1.0})


def test_cutoff_growth_is_cubic(reference_profile):
    out = cutoff_growth(reference_profile)
    assert 2.8 < out["log_slope"] < 3.4
    assert out["cubic_coefficient"] == pytest.approx(82.0 / 3.0, rel=0.1)


def test_perturbation_solver_frozen(reference_profile):
    pert = solve_perturbation(reference_profile)
    assert np.all(np.isfinite(pert.K1))
    assert np.all(np.isfinite(pert.H1))
    assert pert.min_singular_value == pytest.approx(FROZEN_MIN_SV, rel=1e-6)
    assert pert.diagnostic_n == 400


def test_perturbation_report_structure(reference_profile):
    rep = perturbation_report(reference_profile)
    assert rep["origin_exponent_K"] == pytest.approx(2.0, abs=0.1)
    assert rep["origin_exponent_H"] == pytest.approx(2.0, abs=0.1)
    assert rep["linearity_r_squared"] > 0.9999
    assert rep["base_energy"] == pytest.approx(FROZEN_COMPLETED, rel=1e-12)
    assert rep["epsilon_max"] * rep["max_response"] == pytest.approx(3e-3, rel=1e-10)
    # the outer tail of the correction grows instead of decaying; kept visible
    assert rep["tail_slope_K"] == pytest.approx(1.743366982348335, abs=1e-6)


def test_physical_energy_scaling(reference_profile):
    evb = 0.1
    out = physical_energy(reference_profile, evb, v=1.0, beta=1.0, e=2.0, b=1.0)
    assert out["epsilon"] == pytest.approx(evb**4 / 30.0, rel=1e-15)
    assert out["prefactor"] == pytest.approx(np.pi**2, rel=1e-15)
    assert out["quantization_ok"]
    expected = out["prefactor"] * (out["E0_integral"] + out["epsilon"] * out["correction_integral"])
    assert out["total"] == pytest.approx(expected, rel=1e-12)
    odd = physical_energy(reference_profile, evb, e=3.0)
    assert not odd["quantization_ok"]


def test_energy_scan_rows(reference_profile):
    rows = energy_scan([0.1, 0.2], xi_max=25.0, n=4000)
    assert len(rows) == 2
    assert rows[0]["epsilon"] == pytest.approx(1e-4 / 30.0, rel=1e-12)
    assert rows[1]["epsilon"] == pytest.approx(16e-4 / 30.0, rel=1e-12)
    assert rows[1]["dE_over_E0"] > rows[0]["dE_over_E0"]


def test_convergence_toward_continuum():
    out = convergence_check(xi_max=25.0, n=4000)
    assert 2.5 < out["observed_order"] < 3.5
    assert abs(out["completed"]["4000"] - 1.0) < 1e-6


def test_bump_shapes():
    grid = RadialGrid(10.0, 200)
    s = sine_bump(grid, 2, 0.3)
    assert abs(s[-1]) < 1e-12
    g = gaussian_bump(grid, 5.0, 0.8, 0.3)
    assert np.max(np.abs(g)) == pytest.approx(0.3, rel=1e-2)
    assert abs(g[0]) < 1e-6
    assert abs(g[-1]) < 1e-6


def test_profile_requires_matching_lengths():
    grid = RadialGrid(10.0, 100)
    with pytest.raises(ValueError):
        MonopoleProfile(grid, np.zeros(50), np.zeros(100))
