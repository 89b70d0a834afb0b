import math

import pytest

import rmlens as rl
from rmlens.errors import ConfigError, DomainError
from rmlens.profiles import component_mass_fractions


def test_scaling_record():
    record = rl.physical_to_dimensionless(rl.PhysicalConfig(2.0, 1.0, 1.0, 1.0))
    assert record.eta0 == 2.0
    assert record.kappa_coefficient == 2.0  # times G * Sigma
    assert not record.degenerate


def test_scaling_degenerate():
    record = rl.physical_to_dimensionless(rl.PhysicalConfig(2.0, 1.0, 0.0, 1.0))
    assert record.kappa_coefficient == 0.0
    assert record.degenerate


def test_scaling_config_errors():
    with pytest.raises(ConfigError):
        rl.PhysicalConfig(-2.0, 1.0, 1.0, 1.0)
    with pytest.raises(ConfigError):
        rl.PhysicalConfig(2.0, 0.0, 1.0, 1.0)
    with pytest.raises(ConfigError):
        rl.PhysicalConfig(2.0, 1.0, -1.0, 1.0)


def test_gaussian_profile_is_ellipse():
    a, area = 1.0, math.pi
    model = rl.gaussian_model(a, 1.0)
    profile = rl.galaxy_profile(model, total_area=area, samples=200)
    assert len(profile.components) == 1
    comp = profile.components[0]
    b = area / (math.pi * a)
    for x, y in zip(comp.x, comp.y):
        expected = b * math.sqrt(max(a * a - x * x, 0.0)) / a
        assert abs(y - expected) < 1e-12


def test_one_cut_profile_shape():
    model = rl.quartic_model(0.0, 1.0)
    profile = rl.galaxy_profile(model, total_area=1.0)
    comp = profile.components[0]
    assert comp.y[0] < 1e-14 and comp.y[-1] < 1e-14
    assert max(comp.y) > 0.0


def test_two_cut_profile_twin_ovals():
    model = rl.quartic_model(-2.0, 1.0)
    profile = rl.galaxy_profile(model, total_area=1.0)
    assert len(profile.components) == 2
    left, right = profile.components
    assert abs(left.area - right.area) < 1e-12
    assert abs(left.mass - right.mass) < 1e-12
    # mirror symmetry of the boundary curves
    for (xl, yl), (xr, yr) in zip(
        zip(left.x, left.y), zip(reversed(right.x), reversed(right.y))
    ):
        assert abs(xl + xr) < 1e-12
        assert abs(yl - yr) < 1e-12
    # end points of each oval close onto the axis
    for comp in profile.components:
        assert comp.y[0] < 1e-14 and comp.y[-1] < 1e-14


@pytest.mark.parametrize("model", [rl.gaussian_model(1.0, 1.0), rl.quartic_model(-2.0, 1.3)])
def test_profile_matches_defining_relation(model):
    profile = rl.galaxy_profile(model, total_area=2.0)
    for comp in profile.components:
        for x, y in zip(comp.x, comp.y):
            rho = rl.eval_density(model, x)
            expected_sq = (comp.area**2 / 4.0) * (model.mass / comp.mass) ** 2 * rho**2
            assert abs(y * y - expected_sq) < 1e-10


def test_explicit_areas():
    model = rl.quartic_model(-2.0, 1.0)
    profile = rl.galaxy_profile(model, areas=[0.5, 1.5])
    assert profile.components[0].area == 0.5
    assert profile.components[1].area == 1.5
    with pytest.raises(DomainError):
        rl.galaxy_profile(model, areas=[1.0])
    with pytest.raises(DomainError):
        rl.galaxy_profile(model)


def test_mass_fractions_sum_to_one():
    for model in (rl.gaussian_model(1.0, 1.0), rl.quartic_model(-1.6, 0.9)):
        fractions = component_mass_fractions(model)
        assert abs(sum(fractions) - 1.0) < 1e-9
