"""Edge-on galaxy profiles and the physical-to-dimensionless conversion.

A lens model with n cuts describes n coplanar disk galaxies seen edge-on:
component i is the uniform-density region of the orthogonal plane bounded
by Y**2 = (S_i**2 / 4)(m / m_i)**2 rho(X)**2 over its cut, where S_i and
m_i are the component's area and mass.  By default areas are split in
proportion to the component masses (equal surface density), which makes
the boundary simply Y = (S/2) rho(X) with the total area S.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .spectral import LensModel, _chebyshev_gauss2, eval_density

__all__ = [
    "GalaxyComponent",
    "GalaxyProfile",
    "PhysicalConfig",
    "ScalingRecord",
    "component_mass_fractions",
    "galaxy_profile",
    "physical_to_dimensionless",
]


@dataclass(frozen=True)
class PhysicalConfig:
    """Observer-source geometry: distances share one unit, xi0 sets the scale."""

    D_s: float
    D_d: float
    D_ds: float
    xi0: float
    sigma_note: str = ""

    def __post_init__(self):
        if self.D_s <= 0.0 or self.D_d <= 0.0 or self.xi0 <= 0.0:
            raise ConfigError("D_s, D_d and xi0 must be positive")
        if self.D_ds < 0.0:
            raise ConfigError("D_ds must be nonnegative")


@dataclass(frozen=True)
class ScalingRecord:
    """Annotation factors: solving stays dimensionless throughout."""

    eta0: float
    kappa_coefficient: float  # multiplies G * Sigma(xi0 * x)
    degenerate: bool


def physical_to_dimensionless(cfg: PhysicalConfig) -> ScalingRecord:
    """Source-plane scale eta0 = xi0 D_s / D_d and the convergence coefficient
    4 D_d D_ds / D_s (to be multiplied by G and the surface density)."""
    coeff = 4.0 * cfg.D_d * cfg.D_ds / cfg.D_s
    return ScalingRecord(
        eta0=cfg.xi0 * cfg.D_s / cfg.D_d,
        kappa_coefficient=coeff,
        degenerate=cfg.D_ds == 0.0,
    )


@dataclass(frozen=True)
class GalaxyComponent:
    interval: tuple[float, float]
    area: float
    mass: float
    x: tuple[float, ...]
    y: tuple[float, ...]  # upper boundary; the region is symmetric in Y


@dataclass(frozen=True)
class GalaxyProfile:
    components: tuple[GalaxyComponent, ...]


def component_mass_fractions(model: LensModel, nodes: int = 256) -> list[float]:
    """Unit-density weight of each cut, by endpoint-adapted quadrature."""
    s, w = _chebyshev_gauss2(nodes)
    fractions = []
    for a, b in model.cuts.intervals:
        h = 0.5 * (b - a)
        x = 0.5 * (a + b) + h * s
        q = eval_density(model, x) / np.sqrt((x - a) * (b - x))
        fractions.append(h * h * float(np.sum(w * q)))
    return fractions


def galaxy_profile(
    model: LensModel,
    total_area: float | None = None,
    areas: list[float] | None = None,
    samples: int = 200,
) -> GalaxyProfile:
    """Boundary curves Y(X) of the edge-on components.

    Provide either the total area (split by mass fraction, i.e. equal
    surface density across components) or one explicit area per cut.
    """
    fractions = component_mass_fractions(model)
    if areas is not None:
        if len(areas) != len(model.cuts.intervals):
            raise DomainError("one area per cut is required")
        area_list = [float(s) for s in areas]
    elif total_area is not None:
        area_list = [float(total_area) * f for f in fractions]
    else:
        raise DomainError("either total_area or areas must be given")
    if any(s <= 0.0 for s in area_list):
        raise DomainError("areas must be positive")

    components = []
    for (a, b), s_i, f_i in zip(model.cuts.intervals, area_list, fractions):
        xs = np.linspace(a, b, samples)
        # Y = (S_i / 2)(m / m_i) rho(X); masses are m_i = m f_i
        ys = 0.5 * s_i / f_i * eval_density(model, xs)
        components.append(
            GalaxyComponent(
                interval=(a, b),
                area=s_i,
                mass=model.mass * f_i,
                x=tuple(float(v) for v in xs),
                y=tuple(float(v) for v in ys),
            )
        )
    return GalaxyProfile(tuple(components))
