"""Numeric image finder for arbitrary lens models and sources.

Dim images are real roots of x - m V'(x) = w restricted to the support.
Bright images solve conj(w) = conj(z) - m V'(z) + m sqrt(P(z)) off the
support; the solver runs damped Newton iterations on the equivalent real
2x2 system from a deterministic seed cloud (grid + rings hugging the cuts
+ a ring around the source) and keeps converged, residual-verified,
deduplicated solutions.  No completeness certificate is attempted: the
analytic modules provide ground truth where closed forms exist, and the
seed cloud is the knob for everything else.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polyroots
from .errors import DomainError
from .imageset import BRIGHT, DIM, Image, ImageSet, dedup_images
from .spectral import LensModel

__all__ = [
    "SolverConfig",
    "bright_images_numeric",
    "dim_images",
    "newton_polish",
    "residual",
]


@dataclass(frozen=True)
class SolverConfig:
    """Seeding and convergence knobs for the Newton search."""

    seed_radius: float | None = None  # default: 3 * largest cut endpoint
    seed_resolution: int = 64
    newton_tol: float = 1e-13  # step size declaring convergence
    residual_tol: float = 1e-11
    max_iter: int = 80
    dedup_radius: float = 1e-8
    cut_ring_distance: float = 1e-4
    ring_points: int = 256
    exclusion_tube: float = 1e-6

    def __post_init__(self):
        if self.newton_tol > 1e-10:
            raise DomainError("newton_tol must be at most 1e-10")
        if self.dedup_radius < 10.0 * self.newton_tol:
            raise DomainError("dedup_radius must be at least 10 * newton_tol")


DEFAULT_CONFIG = SolverConfig()


def _lens_mismatch(model: LensModel, w: complex, z):
    """conj(w) - conj(z) + m V'(z) - m sqrt(P(z)) for z off the support."""
    zc = np.asarray(z, dtype=complex)
    sq = model._sqrt_branch(zc)
    return np.conj(w) - np.conj(zc) + model.mass * (model.potential.deriv(zc) - sq)


def residual(model: LensModel, w: complex, z: complex) -> float:
    """Lens-equation defect at z: dim form on the support, bright form off it."""
    z = complex(z)
    if z.imag == 0.0 and model.cuts.contains(z.real):
        x = z.real
        return abs(w - x + model.mass * model.potential.deriv(x))
    return float(abs(_lens_mismatch(model, w, z)))


def _newton_run(model: LensModel, w: complex, seeds: np.ndarray, cfg: SolverConfig):
    """Vectorized damped Newton on F(z) = conj(w) - conj(z) + f(z), f holomorphic."""
    z = seeds.astype(complex)
    active = np.ones(z.shape, dtype=bool)
    m = model.mass
    step_cap = max(1.0, model.cuts.span)
    for _ in range(cfg.max_iter):
        if not np.any(active):
            break
        za = z[active]
        sq, dsq = model._sqrt_branch_with_deriv(za)
        f = np.conj(w) - np.conj(za) + m * (model.potential.deriv(za) - sq)
        fp = m * (model.potential.deriv2(za) - dsq)
        det = np.abs(fp) ** 2 - 1.0
        ok = np.abs(det) > 1e-14
        step = np.zeros_like(za)
        step[ok] = -(f[ok] * np.conj(fp[ok]) + np.conj(f[ok])) / det[ok]
        # singular-Jacobian seeds are frozen, not fatal
        scale = np.minimum(1.0, step_cap / np.maximum(np.abs(step), 1e-300))
        step = step * scale
        z_active = za + step
        done = (np.abs(step) < cfg.newton_tol) | ~ok
        z[active] = z_active
        idx = np.flatnonzero(active)
        active[idx[done]] = False
    return z


def _seed_cloud(model: LensModel, w: complex, cfg: SolverConfig) -> np.ndarray:
    radius = cfg.seed_radius if cfg.seed_radius is not None else 3.0 * model.cuts.span
    n = cfg.seed_resolution
    line = np.linspace(-radius, radius, n)
    xg, yg = np.meshgrid(line, line)
    grid = (xg + 1j * yg).ravel()
    seeds = [grid]
    # rings hugging each cut recover images arbitrarily close to the support
    per_cut = max(8, cfg.ring_points // (2 * len(model.cuts.intervals)))
    for a, b in model.cuts.intervals:
        xs = np.linspace(a, b, per_cut)
        for d in (cfg.cut_ring_distance, 0.05 * (b - a)):
            seeds.append(xs + 1j * d)
            seeds.append(xs - 1j * d)
            seeds.append(np.array([a - d, b + d], dtype=complex))
    # a small ring around the source catches the weak-deflection image
    angles = np.linspace(0.0, 2.0 * np.pi, 16, endpoint=False)
    for rr in (0.05, 0.3):
        seeds.append(w + rr * (1.0 + abs(w)) * np.exp(1j * angles))
    cloud = np.concatenate(seeds)
    keep = model.cuts.distance(cloud) > cfg.exclusion_tube
    return cloud[keep]


def bright_images_numeric(
    model: LensModel, w: complex, cfg: SolverConfig | None = None
) -> ImageSet:
    cfg = cfg or DEFAULT_CONFIG
    seeds = _seed_cloud(model, w, cfg)
    final = _newton_run(model, w, seeds, cfg)
    finite = np.isfinite(final)
    final = final[finite]
    dist = np.asarray(model.cuts.distance(final))
    res = np.abs(_lens_mismatch(model, w, final))
    images = []
    for z, d, r in zip(final, dist, res):
        if r > cfg.residual_tol:
            continue
        z = complex(z)
        if d <= cfg.exclusion_tube:
            # converged into the tube: report as a boundary case, never silently
            images.append(Image(z, BRIGHT, float(r), boundary=True))
        else:
            images.append(Image(z, BRIGHT, float(r)))
    return ImageSet(
        source=complex(w),
        images=dedup_images(images, cfg.dedup_radius),
        model=model.description,
    )


def dim_images(model: LensModel, w: complex) -> ImageSet:
    """Real solutions of x - m V'(x) = w on the support; empty if Im w != 0."""
    w = complex(w)
    images: list[Image] = []
    if w.imag == 0.0:
        # ascending coefficients of x - m V'(x) - w
        dv = np.zeros(model.potential.degree)
        dv[1] = 1.0
        coeffs = dv - model.mass * np.asarray(
            [
                (i + 1) * c
                for i, c in enumerate(model.potential.coefficients)
            ]
        )
        coeffs[0] -= w.real
        for a, b in model.cuts.intervals:
            for x in polyroots.real_roots_in(coeffs, a, b):
                images.append(Image(complex(x), DIM, residual(model, w, complex(x))))
    return ImageSet(
        source=w, images=dedup_images(images, 1e-9), model=model.description
    )


def newton_polish(model: LensModel, w: complex, z: complex, iters: int = 4) -> complex:
    """A few full-precision Newton steps; used to tighten closed-form seeds."""
    out = _newton_run(
        model,
        w,
        np.asarray([z], dtype=complex),
        SolverConfig(max_iter=iters, seed_resolution=1),
    )
    z_new = complex(out[0])
    if not np.isfinite(z_new) or residual(model, w, z_new) > residual(model, w, z):
        return z
    return z_new
