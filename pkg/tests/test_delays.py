import math

import numpy as np
import pytest
from scipy import integrate

import rmlens as rl
from rmlens.delays import _log_potential_quad
from rmlens.errors import DomainError

SQ2 = math.sqrt(2.0)


def test_potential_center_value():
    model = rl.gaussian_model(1.0, 1.0)
    assert abs(rl.log_potential(model, 0.0) - (0.5 + math.log(2.0))) < 1e-14


def test_potential_far_field_monopole():
    model = rl.gaussian_model(1.0, 1.0)
    assert abs(rl.log_potential(model, 1e6 + 0.0j) + math.log(1e6)) < 1e-5


def test_closed_form_matches_quadrature():
    model = rl.gaussian_model(1.3, 0.7)
    rng = np.random.default_rng(4)
    for _ in range(50):
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if model.cuts.distance(z) < 1e-3:
            continue
        assert abs(rl.log_potential(model, z) - _log_potential_quad(model, z)) < 1e-7


def test_closed_form_matches_quadrature_on_cut():
    model = rl.gaussian_model(1.0, 1.0)
    for x in (-0.7, 0.0, 0.4, 0.99):
        assert abs(rl.log_potential(model, complex(x)) - _log_potential_quad(model, complex(x))) < 1e-7


def test_delay_massless_limit():
    model = rl.gaussian_model(1.0, 1e-12)
    w = 0.3 + 0.4j
    assert abs(rl.time_delay(model, w, w)) < 1e-10


def test_cross_pair_delay_two_routes():
    # m = 4, a = 2: the cross pair delay is (m/2) ln((m - (a/2)^2)/(m + (a/2)^2))
    model = rl.gaussian_model(2.0, 4.0)
    a, p = 2.0, 2.0
    z1 = -1j * a * p / math.sqrt(1.0 + 2.0 * p)
    z2 = a * p / math.sqrt(2.0 * p - 1.0)
    closed = 2.0 * math.log(3.0 / 5.0)
    via_tau = rl.time_delay(model, 0.0, z1) - rl.time_delay(model, 0.0, z2)
    assert abs(via_tau - closed) < 1e-8
    # the absolute values match their own closed forms as well
    assert abs(rl.time_delay(model, 0.0, z1) - 2.0 * (1.0 + math.log(1.0 / 5.0))) < 1e-12
    assert abs(rl.time_delay(model, 0.0, z2) - 2.0 * (1.0 + math.log(1.0 / 3.0))) < 1e-12


def test_dim_pair_delay_formula():
    # two dim images of one source: tau difference reduces to the closed
    # combination of quadratic separations and potential values
    m, t = 1.0, 0.5
    model = rl.quartic_model(t, m)
    w = 0.0
    cat = rl.images_origin_one_cut(m, t)
    x1 = cat.position("x0").real
    x2 = cat.position("xd+").real
    direct = rl.time_delay(model, w, complex(x2)) - rl.time_delay(model, w, complex(x1))
    closed = 0.5 * (abs(x2 - w) ** 2 - abs(x1 - w) ** 2) + m * (
        float(model.potential(x1)) - float(model.potential(x2))
    )
    assert abs(direct - closed) < 1e-9


def test_two_cut_closed_delay_value_and_routes():
    m, t = 1.0, -1.45
    closed = rl.relative_delay_two_cut(m, t)
    assert abs(closed - (-0.0014713180903521)) < 1e-12
    model = rl.quartic_model(t, m)
    y2 = math.sqrt(m + 0.5 / m + t)
    quad_route = 0.5 * y2**2 + m * (
        rl.log_potential(model, 1j * y2) - rl.log_potential(model, 0.0)
    )
    assert abs(closed - quad_route) < 1e-8


def test_two_cut_delay_grid_against_quadrature():
    for m in (0.8, 1.0, 1.3):
        lo, hi = -m - 0.5 / m, -SQ2
        for frac in (0.2, 0.5, 0.9):
            t = lo + frac * (hi - lo)
            closed = rl.relative_delay_two_cut(m, float(t))
            model = rl.quartic_model(float(t), m)
            y2 = math.sqrt(m + 0.5 / m + t)
            quad_route = 0.5 * y2**2 + m * (
                rl.log_potential(model, 1j * y2) - rl.log_potential(model, 0.0)
            )
            assert abs(closed - quad_route) < 1e-8


def test_potential_difference_matches_transform_integral():
    # d/dy U(iy) is tied to the transform on the imaginary axis
    m, t = 1.0, -1.45
    model = rl.quartic_model(t, m)
    y = 0.22360679774997896

    def integrand(s: float) -> float:
        diff = rl.cauchy_transform(model, complex(0.0, s)) - rl.cauchy_transform(
            model, complex(0.0, -s)
        )
        return float(((-0.5j) * diff).real)

    val, _ = integrate.quad(integrand, 0.0, y, epsabs=1e-14, epsrel=1e-14)
    direct = rl.log_potential(model, complex(0.0, y)) - rl.log_potential(model, 0.0)
    assert abs(val - direct) < 1e-10


def test_two_cut_delay_window_errors():
    with pytest.raises(DomainError):
        rl.relative_delay_two_cut(0.5, -1.45)
    with pytest.raises(DomainError):
        rl.relative_delay_two_cut(1.0, -1.0)
    with pytest.raises(DomainError):
        rl.relative_delay_two_cut(1.0, -2.0)


def test_delay_symmetries_centered_source():
    model = rl.quartic_model(-1.45, 1.0)
    for z in (0.3 + 1.2j, 1.9 + 0.4j, 2.1j):
        tau = rl.time_delay(model, 0.0, z)
        assert abs(tau - rl.time_delay(model, 0.0, np.conj(z))) < 1e-10
        assert abs(tau - rl.time_delay(model, 0.0, -z)) < 1e-10
    # the imaginary pair shares one arrival time by reflection symmetry
    y2 = math.sqrt(0.05)
    assert (
        abs(
            rl.time_delay(model, 0.0, 1j * y2)
            - rl.time_delay(model, 0.0, -1j * y2)
        )
        < 1e-12
    )


def test_delay_report_pairs():
    model = rl.gaussian_model(2.0, 4.0)
    ims = rl.bright_images_gaussian(rl.GaussianParams(2.0, 4.0), 0.0)
    report = rl.delay_report(model, 0.0, ims.images)
    assert len(report.entries) == 4
    assert len(report.pairs) == 6
    for i, j, dtau in report.pairs:
        assert abs(dtau + (report.entries[j][1] - report.entries[i][1])) < 1e-14
    # the cross pair value appears among the differences
    target = 2.0 * math.log(3.0 / 5.0)
    assert any(abs(abs(dtau) - abs(target)) < 1e-8 for _, _, dtau in report.pairs)
