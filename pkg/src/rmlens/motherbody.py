"""Elliptic bodies whose external field matches a density on the focal segment.

The ellipse x**2/alpha**2 + y**2/beta**2 < 1 with focal half-distance
a = sqrt(alpha**2 - beta**2) carries two reference densities:

* the uniform density, whose Cauchy transform is piecewise linear inside
  and (2 pi alpha beta / a**2)(z - sqrt(z**2 - a**2)) outside -- identical
  to the semicircle model of mass pi alpha beta, which is therefore its
  minimal-support replacement;
* the quartic-matched density (m / pi |A2|)(2 c2 (x**2 - y**2) + c3) built
  from the Schwarz function S(z) = A1 z + i A2 sqrt(a**2 - z**2), whose
  exterior transform reproduces the one-cut quartic measure when the
  ellipse shares its focal segment.

Verification is numeric: exterior sample points compare the 2-D quadrature
of the body's Cauchy integral against the closed one-dimensional transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError
from .quartic import one_cut_edges, quartic_model
from .spectral import cauchy_transform

__all__ = [
    "Ellipse",
    "QuarticBodyCoeffs",
    "elliptic_uniform_cauchy",
    "gaussian_mother_quadrature_error",
    "quartic_body_coeffs",
    "quartic_body_density",
    "schwarz",
    "verify_gaussian_mother_body",
    "verify_quartic_mother_body",
]

BOUNDARY_BAND = 1e-12


@dataclass(frozen=True)
class Ellipse:
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.alpha > self.beta > 0.0:
            raise DomainError("ellipse requires alpha > beta > 0")

    @property
    def a(self) -> float:
        """Focal half-distance."""
        return math.sqrt(self.alpha**2 - self.beta**2)

    @property
    def area(self) -> float:
        return math.pi * self.alpha * self.beta

    def level(self, z: complex) -> float:
        return (z.real / self.alpha) ** 2 + (z.imag / self.beta) ** 2

    def boundary_point(self, theta: float) -> complex:
        return complex(self.alpha * math.cos(theta), self.beta * math.sin(theta))

    @cached_property
    def _schwarz_sign(self) -> float:
        # branch probe: conj(z) = S(z) must hold at z = alpha
        a2 = self.a**2
        g = _focal_sqrt(complex(self.alpha))
        a1 = (self.alpha**2 + self.beta**2) / a2
        coef = 2.0 * self.alpha * self.beta / a2
        plus = a1 * self.alpha - coef * g
        minus = a1 * self.alpha + coef * g
        return 1.0 if abs(plus - self.alpha) <= abs(minus - self.alpha) else -1.0


def _focal_sqrt(z):
    """sqrt(z**2 - a**2)-type product with the cut on the focal segment.

    Here normalized to half-distance 1: callers rescale.  Behaves like z at
    infinity; per-factor principal branches cancel off [-1, 1].
    """
    zc = np.asarray(z, dtype=complex)
    return np.sqrt(zc - 1.0) * np.sqrt(zc + 1.0)


def _exterior_sqrt(ellipse: Ellipse, z):
    a = ellipse.a
    zc = np.asarray(z, dtype=complex)
    return a * _focal_sqrt(zc / a)


def schwarz(ellipse: Ellipse, z):
    """Schwarz function of the ellipse: conj(z) = S(z) on the boundary.

    S(z) = A1 z + i A2 sqrt(a**2 - z**2) with A1 = (alpha**2+beta**2)/a**2 and
    A2 = -2 alpha beta / a**2.  The square root uses principal per-factor
    branches arranged to cut along the focal segment, with the overall sign
    fixed by a single boundary probe; this is the unique choice for which
    the boundary identity holds all the way around the ellipse.
    """
    a2 = ellipse.a**2
    a1 = (ellipse.alpha**2 + ellipse.beta**2) / a2
    coef = 2.0 * ellipse.alpha * ellipse.beta / a2
    g = _exterior_sqrt(ellipse, z)
    out = a1 * np.asarray(z, dtype=complex) - ellipse._schwarz_sign * coef * g
    return out if np.asarray(z).shape else complex(out)


def elliptic_uniform_cauchy(ellipse: Ellipse, z: complex) -> complex:
    """Cauchy transform of the uniform unit density on the ellipse.

    Interior: pi conj(z) - pi (alpha-beta)**2 z / a**2.
    Exterior: (2 pi alpha beta / a**2)(z - sqrt(z**2 - a**2)), decaying like
    area / z.  Boundary points are rejected: the two expressions are only
    limits there.
    """
    z = complex(z)
    level = ellipse.level(z)
    if abs(level - 1.0) <= BOUNDARY_BAND:
        raise DomainError("z lies on the ellipse boundary")
    a2 = ellipse.a**2
    if level < 1.0:
        return math.pi * z.conjugate() - math.pi * (ellipse.alpha - ellipse.beta) ** 2 / a2 * z
    # z - sqrt(z**2 - a**2) == a**2 / (z + sqrt(z**2 - a**2)), which does not
    # cancel at large |z|
    g = complex(_exterior_sqrt(ellipse, z))
    return 2.0 * math.pi * ellipse.alpha * ellipse.beta / (z + g)


def _elliptic_grid(ellipse: Ellipse, n_r: int, n_theta: int):
    """Gauss-Legendre x trapezoid nodes of the stretched-polar parametrization."""
    r_nodes, r_weights = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * (r_nodes + 1.0)
    wr = 0.5 * r_weights
    theta = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)
    wt = 2.0 * np.pi / n_theta
    rr, tt = np.meshgrid(r, theta, indexing="ij")
    x = ellipse.alpha * rr * np.cos(tt)
    y = ellipse.beta * rr * np.sin(tt)
    jac = ellipse.alpha * ellipse.beta * rr * (wr[:, None] * wt)
    return x, y, jac


def _cauchy_2d(ellipse: Ellipse, density, z: complex, n_r: int, n_theta: int) -> complex:
    x, y, jac = _elliptic_grid(ellipse, n_r, n_theta)
    zeta = x + 1j * y
    vals = density(x, y) * jac / (z - zeta)
    return complex(np.sum(vals))


def verify_gaussian_mother_body(ellipse: Ellipse, sample_points) -> float:
    """Max relative mismatch of the semicircle transform against the uniform body.

    Both sides are closed forms (mass pi alpha beta, half-length the focal
    distance), so the mismatch is pure roundoff.  Points inside the closed
    ellipse are rejected.
    """
    from .gaussian import gaussian_model

    model = gaussian_model(ellipse.a, ellipse.area)
    worst = 0.0
    for z in sample_points:
        z = complex(z)
        if ellipse.level(z) <= 1.0 + BOUNDARY_BAND:
            raise DomainError(f"sample {z} is not exterior to the ellipse")
        reference = elliptic_uniform_cauchy(ellipse, z)
        value = cauchy_transform(model, z, total_mass=True)
        worst = max(worst, abs(value - reference) / abs(reference))
    return worst


def gaussian_mother_quadrature_error(
    ellipse: Ellipse, sample_points, n_r: int = 512, n_theta: int = 512
) -> float:
    """Same comparison with the body side done by 2-D quadrature."""
    from .gaussian import gaussian_model

    model = gaussian_model(ellipse.a, ellipse.area)
    worst = 0.0
    for z in sample_points:
        z = complex(z)
        if ellipse.level(z) <= 1.0 + BOUNDARY_BAND:
            raise DomainError(f"sample {z} is not exterior to the ellipse")
        body = _cauchy_2d(ellipse, lambda x, y: np.ones_like(x), z, n_r, n_theta)
        value = cauchy_transform(model, z, total_mass=True)
        worst = max(worst, abs(value - body) / abs(body))
    return worst


@dataclass(frozen=True)
class QuarticBodyCoeffs:
    """Coefficients of the quartic-matched body density on an ellipse."""

    A1: float
    A2: float
    c1: float
    c2: float
    c3: float

    def residuals(self, a: float, c: float) -> tuple[float, float, float]:
        """Defects of the linear system tying the body to the segment density."""
        r1 = (3.0 * self.A1**2 + self.A2**2) * self.c1 + self.c2 - 1.0
        r2 = self.c3 - a**2 * self.A2**2 * self.c1 - c
        r3 = self.c2 - 3.0 * self.c1
        return r1, r2, r3


def quartic_body_coeffs(ellipse: Ellipse, t: float) -> QuarticBodyCoeffs:
    """Body coefficients for the one-cut quartic sharing the focal segment."""
    a, c = one_cut_edges(t)
    if abs(ellipse.a - a) > 1e-9 * max(1.0, a):
        raise DomainError(
            f"ellipse focal half-distance {ellipse.a} does not match the cut {a}"
        )
    a2 = a * a
    A1 = (ellipse.alpha**2 + ellipse.beta**2) / a2
    A2 = -2.0 * ellipse.alpha * ellipse.beta / a2
    c1 = 1.0 / (3.0 * A1**2 + A2**2 + 3.0)
    c2 = 3.0 * c1
    c3 = c + a2 * A2**2 * c1
    return QuarticBodyCoeffs(A1, A2, c1, c2, c3)


def quartic_body_density(ellipse: Ellipse, t: float, m: float, point) -> float:
    """Body density m (2 c2 (x**2 - y**2) + c3) / (pi |A2|) at an interior point.

    Positive throughout the ellipse whenever y**2 < x**2 + c3/(2 c2) holds
    there; the sufficient condition is alpha/sqrt(3) < beta < alpha.
    """
    x, y = point
    if ellipse.level(complex(x, y)) >= 1.0:
        raise DomainError("density is defined on the open ellipse")
    k = quartic_body_coeffs(ellipse, t)
    return m / (math.pi * abs(k.A2)) * (2.0 * k.c2 * (x * x - y * y) + k.c3)


def verify_quartic_mother_body(
    ellipse: Ellipse,
    t: float,
    m: float,
    sample_points,
    n_r: int = 512,
    n_theta: int = 512,
) -> float:
    """Max relative mismatch of the quartic transform against the 2-D body.

    The body side is quadrature of the matched density; the segment side is
    the closed one-cut transform.  Density positivity over the ellipse is a
    precondition and checked on the quadrature grid.
    """
    k = quartic_body_coeffs(ellipse, t)
    model = quartic_model(t, m)
    x, y, jac = _elliptic_grid(ellipse, n_r, n_theta)
    density = m / (math.pi * abs(k.A2)) * (2.0 * k.c2 * (x * x - y * y) + k.c3)
    if np.min(density) <= 0.0:
        raise DomainError("matched density is not positive on the ellipse")
    zeta = x + 1j * y
    worst = 0.0
    for z in sample_points:
        z = complex(z)
        if ellipse.level(z) <= 1.0 + BOUNDARY_BAND:
            raise DomainError(f"sample {z} is not exterior to the ellipse")
        body = complex(np.sum(density * jac / (z - zeta)))
        segment = cauchy_transform(model, z, total_mass=True)
        worst = max(worst, abs(body - segment) / abs(segment))
    return worst
