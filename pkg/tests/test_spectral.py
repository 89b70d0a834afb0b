import math

import numpy as np
import pytest
from numpy.polynomial import polynomial as npoly

import rmlens as rl
from rmlens.errors import BranchCutError, DomainError


GAUSS = rl.gaussian_model(1.0, 1.0)
QUARTIC_1CUT = rl.quartic_model(0.0, 1.0)
QUARTIC_2CUT = rl.quartic_model(-2.0, 1.0)
ALL_MODELS = [GAUSS, QUARTIC_1CUT, QUARTIC_2CUT, rl.quartic_model(-1.45, 1.0)]


# --- density -------------------------------------------------------------------


def test_density_semicircle_center():
    assert abs(rl.eval_density(GAUSS, 0.0) - 2.0 / math.pi) < 1e-14


def test_density_endpoint_zero():
    assert rl.eval_density(GAUSS, 1.0) == 0.0


def test_density_quartic_center_two_routes():
    a, c = rl.quartic.one_cut_edges(0.0)
    closed = c * a / math.pi
    via_coeffs = math.sqrt(abs(npoly.polyval(0.0, QUARTIC_1CUT.spectral.coefficients))) / math.pi
    assert abs(closed - via_coeffs) < 1e-14
    assert abs(rl.eval_density(QUARTIC_1CUT, 0.0) - closed) < 1e-14
    assert abs(closed - 0.3321212630340892) < 1e-12


def test_density_outside_support():
    with pytest.raises(DomainError):
        rl.eval_density(GAUSS, 1.5)
    with pytest.raises(DomainError):
        rl.eval_density(QUARTIC_2CUT, 0.0)  # central gap


def test_density_positive_inside():
    for model in ALL_MODELS:
        for a, b in model.cuts.intervals:
            xs = np.linspace(a + 1e-6, b - 1e-6, 101)
            rho = rl.eval_density(model, xs)
            assert np.all(rho > 0.0) or model is QUARTIC_1CUT  # t=0 has no interior zero either
            assert np.all(rho >= 0.0)


# --- normalization --------------------------------------------------------------


def test_normalization_semicircle():
    assert abs(rl.check_normalization(GAUSS) - 1.0) < 1e-10


@pytest.mark.parametrize("model", ALL_MODELS)
def test_normalization_all(model):
    assert abs(rl.check_normalization(model) - 1.0) < 1e-9


def test_normalization_sweep():
    for a in (0.5, 1.0, 2.0):
        assert abs(rl.check_normalization(rl.gaussian_model(a, 1.0)) - 1.0) < 1e-9
    for t in (1.5, 0.5, 0.0, -1.0, -math.sqrt(2.0), -1.45, -2.0, -3.0):
        for m in (0.5, 1.0):
            assert abs(rl.check_normalization(rl.quartic_model(t, m)) - 1.0) < 1e-9


# --- branch of sqrt(P) ----------------------------------------------------------


def test_branch_sqrt_gaussian_real_axis():
    val = rl.branch_sqrt_P(GAUSS, 2.0 + 0.0j)
    assert abs(val - 2.0 * math.sqrt(3.0)) < 1e-12


def test_branch_sqrt_sign_convention():
    # omega decays like 1/z, so Im omega(i) shares the sign of Im(1/i) < 0
    omega = rl.cauchy_transform(GAUSS, 1j)
    assert omega.imag < 0.0
    assert abs(omega.real) < 1e-14


def test_branch_sqrt_quartic_far_series():
    q = QUARTIC_1CUT
    val = q.potential.deriv(10.0) - rl.branch_sqrt_P(q, 10.0 + 0.0j)
    assert abs(val - 0.1) < 1e-2


def test_branch_tube_rejection():
    with pytest.raises(BranchCutError):
        rl.branch_sqrt_P(GAUSS, complex(0.5, 1e-13))


# --- Cauchy transform ----------------------------------------------------------


def test_transform_on_cut_value():
    assert rl.cauchy_transform(GAUSS, 0.5) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("model", ALL_MODELS)
def test_transform_far_field(model):
    for z in (1e6 + 0j, 1e6j, -7e5 + 7e5j):
        omega = rl.cauchy_transform(model, z)
        assert abs(omega - 1.0 / z) <= 1e-10 * abs(1.0 / z)


def test_plemelj_boundary_value():
    omega_plus, omega_minus = rl.boundary_values(GAUSS, 0.0)
    assert abs(omega_plus - (-2j)) < 1e-14
    assert abs(omega_minus - 2j) < 1e-14


@pytest.mark.parametrize("model", ALL_MODELS)
def test_plemelj_recovery_finite_eps(model):
    eps = 1e-6
    for a, b in model.cuts.intervals:
        for x in np.linspace(a + 0.1 * (b - a), b - 0.1 * (b - a), 5):
            jump = rl.cauchy_transform(model, complex(x, eps)) - rl.cauchy_transform(
                model, complex(x, -eps)
            )
            rho = rl.eval_density(model, x)
            assert abs(jump / (-2j * math.pi) - rho) <= 1e-4 * max(rho, 1e-3)


@pytest.mark.parametrize("model", ALL_MODELS)
def test_average_rule(model):
    for a, b in model.cuts.intervals:
        for x in np.linspace(a + 1e-3, b - 1e-3, 7):
            omega_plus, omega_minus = rl.boundary_values(model, x)
            avg = 0.5 * (omega_plus + omega_minus)
            assert abs(avg - model.potential.deriv(x)) < 1e-8


@pytest.mark.parametrize("model", ALL_MODELS)
def test_asymptotic_bound_along_rays(model):
    # z**2 (omega - 1/z) must stay bounded; its limit is the second moment
    bound = 10.0 * (1.0 + model.cuts.span**2)
    for k in range(8):
        direction = np.exp(1j * (2.0 * np.pi * k / 8.0 + 0.1))
        for radius in (1e3, 1e4, 1e6):
            z = radius * direction
            val = z * z * (rl.cauchy_transform(model, z) - 1.0 / z)
            assert abs(val) < bound


@pytest.mark.parametrize("model", ALL_MODELS)
def test_schwarz_reflection(model):
    rng = np.random.default_rng(5)
    for _ in range(20):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3))
        left = rl.cauchy_transform(model, np.conj(z))
        right = np.conj(rl.cauchy_transform(model, z))
        assert abs(left - right) < 1e-12


@pytest.mark.parametrize("model", [GAUSS, QUARTIC_1CUT, QUARTIC_2CUT])
def test_equilibrium_constancy(model):
    _, spread = rl.equilibrium_spread(model, samples_per_cut=25)
    assert spread < 1e-6


# --- model validation -----------------------------------------------------------


def test_generic_model_roundtrip():
    model = rl.generic_model(
        (0.0, 1.0), (-4.0, 0.0, 4.0), [(-1.0, 1.0)], 1.0, name="semicircle"
    )
    assert abs(rl.eval_density(model, 0.0) - 2.0 / math.pi) < 1e-12
    xs = np.linspace(-0.9, 0.9, 9)
    for x in xs:
        ref = rl.cauchy_transform(GAUSS, complex(x, 0.5))
        got = rl.cauchy_transform(model, complex(x, 0.5))
        assert abs(ref - got) < 1e-12


def test_generic_model_bad_normalization():
    with pytest.raises(DomainError):
        rl.generic_model((0.0, 1.0), (-8.0, 0.0, 8.0), [(-1.0, 1.0)], 1.0)


def test_model_invariant_checks():
    with pytest.raises(DomainError):
        rl.LensModel(
            potential=rl.Potential((0.0, 1.0)),
            spectral=rl.SpectralPolynomial.from_coefficients((-4.0, 0.0, 4.0)),
            cuts=rl.SupportCuts(((-2.0, 2.0),)),  # endpoints off the roots
            mass=1.0,
        )
    with pytest.raises(DomainError):
        rl.gaussian_model(1.0, -1.0)
    with pytest.raises(DomainError):
        rl.SupportCuts(((1.0, 0.5),))
    with pytest.raises(DomainError):
        rl.SupportCuts(((0.0, 1.0), (0.5, 2.0)))
    with pytest.raises(DomainError):
        rl.Potential((1.0,))
    with pytest.raises(DomainError):
        rl.Potential((0.0, -1.0))
