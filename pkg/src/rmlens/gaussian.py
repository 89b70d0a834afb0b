"""Closed-form lens solving for the semicircle (Gaussian-ensemble) model.

The unit density is the Wigner semicircle on [-a, a], V(z) = z**2 / a**2
and P(z) = (4/a**4)(z**2 - a**2).  Everything is controlled by the single
deflection strength p = 2 m / a**2: the dim image is x = w/(1-p) when it
lands inside the cut, and bright images come from the Joukowski reduction
z = (a/2)(Z + 1/Z) of the off-cut equation to

    Z**2 - 2 p |Z|**2 - 2 u Z + 1 = 0,   |Z| < 1,   u = w / a.

Splitting Z = x + i y, u = alpha + i beta, the solutions are intersections
of two conics.  On the source axes the system factorizes into quadratics;
off the axes, eliminating y = beta x / (x - alpha) leaves the quartic

    (1-2p) x**4 + 4 alpha (p-1) x**3
      + (5 alpha**2 + beta**2 - 2p(alpha**2+beta**2) + 1) x**2
      - 2 alpha (alpha**2 + beta**2 + 1) x + alpha**2 = 0,

which degenerates to a cubic exactly at p = 1/2, the case whose source-plane
image-count chart is fully classified here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import polyroots, solver
from .errors import DomainError
from .imageset import BRIGHT, CONTINUUM, DIM, Image, ImageSet, dedup_images
from .spectral import LensModel, Potential, SpectralPolynomial, SupportCuts

__all__ = [
    "GaussianParams",
    "bright_images_gaussian",
    "count_regions_half",
    "curve_beta_at_alpha",
    "dim_images_gaussian",
    "discriminant_half",
    "gaussian_model",
    "images_gaussian",
    "joukowski",
    "joukowski_inverse",
]

# |Z| within this band of 1 is treated as an on-cut boundary hit
UNIT_CIRCLE_BAND = 1e-9
DEDUP_RADIUS = 1e-8


@dataclass(frozen=True)
class GaussianParams:
    """Cut half-length a and total mass m; p = 2m/a**2 drives everything."""

    a: float
    m: float

    def __post_init__(self):
        if self.a <= 0.0 or self.m <= 0.0:
            raise DomainError("a and m must be positive")

    @property
    def p(self) -> float:
        return 2.0 * self.m / self.a**2

    @property
    def degenerate(self) -> bool:
        """p = 1: the whole cut maps to the origin of the source plane."""
        return self.p == 1.0

    @classmethod
    def from_strength(cls, a: float, p: float) -> "GaussianParams":
        return cls(a, 0.5 * p * a**2)

    def model(self) -> LensModel:
        return gaussian_model(self.a, self.m)


def gaussian_model(a: float, m: float) -> LensModel:
    """Lens model with V = z**2/a**2, P = (4/a**4)(z**2 - a**2), cut [-a, a]."""
    if a <= 0.0 or m <= 0.0:
        raise DomainError("a and m must be positive")
    spectral = SpectralPolynomial(
        coefficients=(-4.0 / a**2, 0.0, 4.0 / a**4),
        root_clusters=((complex(-a), 1), (complex(a), 1)),
    )
    return LensModel(
        potential=Potential((0.0, 1.0 / a**2)),
        spectral=spectral,
        cuts=SupportCuts(((-a, a),)),
        mass=m,
        name=f"gaussian(a={a:g}, m={m:g})",
    )


def joukowski(a: float, Z: complex) -> complex:
    return 0.5 * a * (Z + 1.0 / Z)


def joukowski_inverse(a: float, z: complex) -> complex:
    """Map the cut plane onto the unit disk: Z = a / (z + sqrt(z**2 - a**2))."""
    g = cmath.sqrt(z - a) * cmath.sqrt(z + a)
    return a / (z + g)


def dim_images_gaussian(params: GaussianParams, w: complex) -> ImageSet:
    """The unique on-cut image x = w/(1-p), when the source allows one.

    Real sources with |w| <= a|1-p| have exactly one dim image; at p = 1 the
    entire cut is the image of w = 0 and a continuum marker is returned.
    """
    w = complex(w)
    model_desc = f"gaussian(a={params.a:g}, m={params.m:g})"
    images: list[Image] = []
    p = params.p
    if params.degenerate:
        if w == 0:
            images.append(
                Image(0.0 + 0.0j, CONTINUUM, 0.0, label=f"[-{params.a:g},{params.a:g}]")
            )
    elif w.imag == 0.0 and abs(w.real) <= params.a * abs(1.0 - p):
        x = w.real / (1.0 - p)
        images.append(Image(complex(x), DIM, abs(w.real - (1.0 - p) * x)))
    return ImageSet(source=w, images=tuple(images), model=model_desc)


def _axis_candidates(p: float, alpha: float, beta: float) -> list[complex]:
    """Solutions of the conic system when the source sits on an axis."""
    out: list[complex] = []
    if alpha == 0.0 and beta == 0.0:
        r = 1.0 / math.sqrt(1.0 + 2.0 * p)
        out.extend([1j * r, -1j * r])
        if p > 0.5:
            s = 1.0 / math.sqrt(2.0 * p - 1.0)
            out.extend([complex(s), complex(-s)])
    elif beta == 0.0:
        # y = 0 family: (1-2p) x**2 - 2 alpha x + 1 = 0
        for x in np.asarray(polyroots.roots([1.0, -2.0 * alpha, 1.0 - 2.0 * p])):
            if abs(x.imag) < 1e-12:
                out.append(complex(x.real))
        # x = alpha family: y**2 = 1/(1+2p) - alpha**2
        y2 = 1.0 / (1.0 + 2.0 * p) - alpha**2
        if y2 > 0.0:
            y = math.sqrt(y2)
            out.extend([complex(alpha, y), complex(alpha, -y)])
    else:  # alpha == 0, beta != 0
        # x = 0 family: (1+2p) y**2 - 2 beta y - 1 = 0
        disc = beta**2 + 1.0 + 2.0 * p
        root = math.sqrt(disc)
        out.extend(
            [
                complex(0.0, (beta + root) / (1.0 + 2.0 * p)),
                complex(0.0, (beta - root) / (1.0 + 2.0 * p)),
            ]
        )
        # y = beta family: x**2 = 1/(2p-1) - beta**2
        if p > 0.5:
            x2 = 1.0 / (2.0 * p - 1.0) - beta**2
            if x2 > 0.0:
                x = math.sqrt(x2)
                out.extend([complex(x, beta), complex(-x, beta)])
    return out


def _offaxis_candidates(p: float, alpha: float, beta: float) -> list[complex]:
    coeffs = [
        alpha**2,
        -2.0 * alpha * (alpha**2 + beta**2 + 1.0),
        5.0 * alpha**2 + beta**2 - 2.0 * p * (alpha**2 + beta**2) + 1.0,
        4.0 * alpha * (p - 1.0),
        1.0 - 2.0 * p,
    ]
    out: list[complex] = []
    for r in np.asarray(polyroots.roots(coeffs)):
        if abs(r.imag) > 1e-7 * max(1.0, abs(r)):
            continue
        x = r.real
        if abs(x - alpha) < 1e-12:
            continue  # spurious elimination root
        y = beta * x / (x - alpha)
        out.append(complex(x, y))
    return out


def bright_images_gaussian(params: GaussianParams, w: complex) -> ImageSet:
    """All off-cut images: conic-system solutions mapped back by Joukowski.

    At most four images exist.  Solutions landing within 1e-9 of the unit
    circle map onto the cut itself and are reported with a boundary flag
    rather than dropped.
    """
    w = complex(w)
    p = params.p
    a = params.a
    u = w / a
    alpha, beta = u.real, u.imag
    if alpha == 0.0 or beta == 0.0:
        candidates = _axis_candidates(p, alpha, beta)
    else:
        candidates = _offaxis_candidates(p, alpha, beta)

    model = params.model()
    images: list[Image] = []
    for Z in candidates:
        mod = abs(Z)
        if mod == 0.0 or mod >= 1.0 + UNIT_CIRCLE_BAND:
            continue
        boundary = mod >= 1.0 - UNIT_CIRCLE_BAND
        z = joukowski(a, Z)
        if not boundary:
            z = solver.newton_polish(model, w, z)
        images.append(
            Image(z, BRIGHT, solver.residual(model, w, z), boundary=boundary)
        )
    return ImageSet(
        source=w,
        images=dedup_images(images, DEDUP_RADIUS),
        model=model.description,
    )


def images_gaussian(params: GaussianParams, w: complex) -> ImageSet:
    dim = dim_images_gaussian(params, w)
    bright = bright_images_gaussian(params, w)
    return ImageSet(
        source=complex(w),
        images=tuple([*dim.images, *bright.images]),
        model=bright.model,
    )


# --- p = 1/2 source-plane chart ----------------------------------------------


def discriminant_half(u: complex) -> float:
    """Discriminant curve of the p = 1/2 cubic, as a signed value.

    Negative inside the curve (three real cubic solutions), positive outside
    (one), zero on the curve (a double solution).  At beta = 0 the polynomial
    factors as 2 (2 alpha**2 - 1)**3.
    """
    alpha2 = u.real**2
    beta2 = u.imag**2
    return (
        16.0 * alpha2**3
        + 8.0 * alpha2**2 * (4.0 * beta2 - 3.0)
        + 4.0 * alpha2 * (4.0 * beta2**2 + 10.0 * beta2 + 3.0)
        - (beta2 + 2.0)
    )


def curve_beta_at_alpha(alpha: float) -> float | None:
    """Positive beta on the discriminant curve at fixed alpha, if any."""
    # quadratic in beta**2
    a2 = alpha**2
    qa = 16.0 * a2
    qb = 32.0 * a2**2 + 40.0 * a2 - 1.0
    qc = 16.0 * a2**3 - 24.0 * a2**2 + 12.0 * a2 - 2.0
    disc = qb**2 - 4.0 * qa * qc
    if disc < 0.0 or qa == 0.0:
        return None
    b2 = (-qb + math.sqrt(disc)) / (2.0 * qa)
    if b2 <= 0.0:
        return None
    beta = math.sqrt(b2)
    # polish on the full expression
    for _ in range(60):
        f = discriminant_half(complex(alpha, beta))
        df = (
            discriminant_half(complex(alpha, beta + 1e-7))
            - discriminant_half(complex(alpha, beta - 1e-7))
        ) / 2e-7
        if df == 0.0:
            break
        step = f / df
        beta -= step
        if abs(step) < 1e-15:
            break
    return beta


def count_regions_half(u: complex) -> int:
    """Expected number of bright images of the p = 1/2 model for source u.

    On-axis sources follow the closed-form classification (transitions at
    1/2 and 1/sqrt(2) on the real axis, at 1/2 on the imaginary axis).
    Off-axis sources are decided by the sign of the discriminant curve: one
    image outside it, otherwise the count of cubic solutions with |Z| < 1.
    Exactly on the curve two distinct solutions exist and 2 is returned.
    """
    alpha, beta = abs(u.real), abs(u.imag)
    if alpha == 0.0 and beta == 0.0:
        return 2
    if beta == 0.0:
        if alpha <= 0.5:
            return 2
        if alpha < 1.0 / math.sqrt(2.0):
            return 3
        return 1
    if alpha == 0.0:
        return 2 if beta < 0.5 else 1
    disc = discriminant_half(complex(alpha, beta))
    if disc == 0.0:
        return 2
    if disc > 0.0:
        return 1
    count = 0
    for Z in _offaxis_candidates(0.5, alpha, beta):
        if abs(Z) < 1.0 - UNIT_CIRCLE_BAND:
            count += 1
    return count
