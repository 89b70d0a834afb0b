"""Quartic-ensemble lens: one-cut and two-cut phases of V = z**4/4 + t z**2/2.

For t > -sqrt(2) the density (x**2 + c) sqrt(a**2 - x**2) / pi lives on a
single cut, with

    a = sqrt(2/3) sqrt(-t + sqrt(t**2 + 6)),   c = (2t + sqrt(t**2 + 6)) / 3.

For t < -sqrt(2) the support splits into [-a, -b] and [b, a] with
a = sqrt(sqrt(2) - t), b = sqrt(-sqrt(2) - t) and density
|x| sqrt((a**2 - x**2)(x**2 - b**2)) / pi.  The central-source (w = 0)
image sets are catalogued in closed form in both phases, and a scan across
t = -sqrt(2) tracks how the catalog entries merge, vanish or flip between
dim and bright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import polyroots, solver
from .errors import DomainError, NumericError
from .imageset import BRIGHT, DIM, Image, ImageSet, sort_images
from .solver import SolverConfig
from .spectral import LensModel, Potential, SpectralPolynomial, SupportCuts

__all__ = [
    "ImageCatalog",
    "PhaseScan",
    "QuarticParams",
    "T_PHASE",
    "axis_bright_one_cut",
    "images_origin",
    "images_origin_one_cut",
    "images_origin_two_cut",
    "images_quartic",
    "one_cut_edges",
    "phase_transition_scan",
    "quartic_model",
    "t_dim_threshold",
    "two_cut_edges",
]

T_PHASE = -math.sqrt(2.0)  # support topology changes here
ONE_OVER_SQRT2 = 1.0 / math.sqrt(2.0)


def one_cut_edges(t: float) -> tuple[float, float]:
    """(a, c) of the one-cut spectral polynomial (z**2 - a**2)(z**2 + c)**2."""
    if t < T_PHASE:
        raise DomainError("one-cut phase requires t >= -sqrt(2)")
    s = math.sqrt(t * t + 6.0)
    a = math.sqrt(2.0 / 3.0) * math.sqrt(-t + s)
    c = (2.0 * t + s) / 3.0
    return a, c


def two_cut_edges(t: float) -> tuple[float, float]:
    """(a, b) of the two-cut spectral polynomial z**2 (z**2-a**2)(z**2-b**2)."""
    if t > T_PHASE:
        raise DomainError("two-cut phase requires t <= -sqrt(2)")
    return math.sqrt(math.sqrt(2.0) - t), math.sqrt(-math.sqrt(2.0) - t)


def t_dim_threshold(m: float) -> float:
    """Smallest t with off-center dim images when m <= 1/sqrt(2)."""
    if not 0.0 < m <= ONE_OVER_SQRT2:
        raise DomainError("threshold defined for 0 < m <= 1/sqrt(2)")
    return (2.0 * math.sqrt(1.0 - 2.0 * m * m) - 1.0) / m


@dataclass(frozen=True)
class QuarticParams:
    t: float
    m: float

    def __post_init__(self):
        if self.m <= 0.0:
            raise DomainError("mass must be positive")

    @property
    def phase(self) -> str:
        if self.t > T_PHASE:
            return "one_cut"
        if self.t == T_PHASE:
            return "critical"
        return "two_cut"

    @property
    def a(self) -> float:
        """Outer support edge."""
        if self.t > T_PHASE:
            return one_cut_edges(self.t)[0]
        return two_cut_edges(self.t)[0]

    @property
    def b(self) -> float | None:
        """Inner support edge; defined from the merge point downward."""
        return None if self.t > T_PHASE else two_cut_edges(self.t)[1]

    @property
    def c(self) -> float | None:
        """Double-root height of the one-cut spectral polynomial."""
        return one_cut_edges(self.t)[1] if self.t >= T_PHASE else None

    def model(self) -> LensModel:
        return quartic_model(self.t, self.m)


def quartic_model(t: float, m: float) -> LensModel:
    """Lens model for the quartic ensemble; t = -sqrt(2) uses b = 0 two-cut form."""
    if m <= 0.0:
        raise DomainError("mass must be positive")
    potential = Potential((0.0, 0.5 * t, 0.0, 0.25))
    if t > T_PHASE:
        a, c = one_cut_edges(t)
        spectral = SpectralPolynomial.from_roots(
            1.0,
            (
                (complex(-a), 1),
                (complex(a), 1),
                (complex(0.0, math.sqrt(c)), 2),
                (complex(0.0, -math.sqrt(c)), 2),
            ),
        )
        cuts = SupportCuts(((-a, a),))
    else:
        a, b = two_cut_edges(t)
        if b == 0.0:
            # merge point: P = z**2 (z**2 - a**2) z**2
            spectral = SpectralPolynomial.from_roots(
                1.0, ((complex(0.0), 4), (complex(-a), 1), (complex(a), 1))
            )
            cuts = SupportCuts(((-a, a),))
        else:
            spectral = SpectralPolynomial.from_roots(
                1.0,
                (
                    (complex(0.0), 2),
                    (complex(-a), 1),
                    (complex(-b), 1),
                    (complex(b), 1),
                    (complex(a), 1),
                ),
            )
            cuts = SupportCuts(((-a, -b), (b, a)))
    return LensModel(
        potential=potential,
        spectral=spectral,
        cuts=cuts,
        mass=m,
        name=f"quartic(t={t:g}, m={m:g})",
    )


@dataclass(frozen=True)
class ImageCatalog:
    """Labeled central-source image set of one parameter point."""

    m: float
    t: float
    phase: str
    images: tuple[Image, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(im.label or "" for im in self.images))

    def position(self, label: str) -> complex:
        for im in self.images:
            if im.label == label:
                return im.z
        raise KeyError(label)

    def as_image_set(self) -> ImageSet:
        return ImageSet(source=0.0 + 0.0j, images=sort_images(self.images), model=self.phase)


def _squared_axis_roots(c2: float, c1: float, c0: float) -> list[float]:
    """Nonnegative roots X of c2 X**2 + c1 X + c0 = 0.

    Double roots split into conjugate pairs of width ~sqrt(eps) in double
    precision, hence the loose imaginary filter; the signed-equation polish
    downstream restores full accuracy.
    """
    rts = np.asarray(polyroots.roots([c0, c1, c2]))
    return sorted(
        float(r.real)
        for r in rts
        if abs(r.imag) < 1e-6 * max(1.0, abs(r)) and r.real > 0.0
    )


def _polish_signed(defect, v0: float) -> float:
    """Guarded secant refinement keeping the best-seen defect magnitude."""
    best_v, best_f = v0, abs(defect(v0))
    v_prev, f_prev = v0, defect(v0)
    v = v0 * (1.0 + 1e-8) + 1e-12
    for _ in range(30):
        f = defect(v)
        if abs(f) < best_f:
            best_v, best_f = v, abs(f)
        if f == f_prev or not np.isfinite(f):
            break
        v_next = v - f * (v - v_prev) / (f - f_prev)
        if not np.isfinite(v_next):
            break
        v_prev, f_prev = v, f
        v = v_next
        if abs(v - v_prev) < 1e-16 * max(1.0, abs(v)):
            break
    f = defect(v)
    if np.isfinite(f) and abs(f) < best_f:
        best_v = v
    return best_v


def axis_bright_one_cut(m: float, t: float) -> tuple[float | None, float | None]:
    """Positive representatives (x1, y1) of the off-cut axis images.

    The defining equations carry a square root, so candidates come from the
    squared (quadratic in x**2 resp. y**2) forms and are filtered against
    the original signed equations; squaring alone would admit ghost roots.
    """
    a, c = one_cut_edges(t)
    mt = m * t

    x1 = None
    cand = _squared_axis_roots(
        2.0 * m * (mt - 1.0) - m * m * (2.0 * c - a * a),
        (mt - 1.0) ** 2 - m * m * (c * c - 2.0 * a * a * c),
        m * m * a * a * c * c,
    )
    def x_defect(x: float) -> float:
        return (
            m * x**3
            + (mt - 1.0) * x
            - m * (x * x + c) * math.sqrt(max(x * x - a * a, 0.0))
        )

    for X in cand:
        # the pair can merge into the cut endpoint (X -> a**2) at the
        # one-cut boundary regimes; allow the degenerate hit and clamp
        if X < a * a * (1.0 - 1e-10):
            continue
        x = math.sqrt(max(X, a * a))
        lhs = m * x**3 + (mt - 1.0) * x
        rhs = m * (x * x + c) * math.sqrt(max(x * x - a * a, 0.0))
        if abs(lhs - rhs) <= abs(lhs + rhs) + 1e-12 * max(1.0, abs(lhs)):
            x1 = max(_polish_signed(x_defect, x), a)
            break

    y1 = None
    cand = _squared_axis_roots(
        -2.0 * m * (mt + 1.0) - m * m * (a * a - 2.0 * c),
        (mt + 1.0) ** 2 - m * m * (c * c - 2.0 * a * a * c),
        -(m * m) * a * a * c * c,
    )
    def y_defect(y: float) -> float:
        return -m * y**3 + (mt + 1.0) * y - m * (c - y * y) * math.sqrt(y * y + a * a)

    for Y in cand:
        y = math.sqrt(Y)
        lhs = -m * y**3 + (mt + 1.0) * y
        rhs = m * (c - y * y) * math.sqrt(y * y + a * a)
        if abs(lhs - rhs) <= abs(lhs + rhs) + 1e-12 * max(1.0, abs(lhs)):
            y1 = _polish_signed(y_defect, y)
            break

    return x1, y1


def _entry(model: LensModel, z: complex, kind: str, label: str) -> Image:
    return Image(z, kind, solver.residual(model, 0.0, z), label=label)


def images_origin_one_cut(m: float, t: float) -> ImageCatalog:
    """Central-source catalog in the one-cut phase (t >= -sqrt(2)).

    Presence of each family is decided by explicit predicates on (m, t);
    positions of the off-cut axis pairs come from the filtered squared
    equations.  A predicate promising an image the equations cannot deliver
    is a hard error, not a silent drop.
    """
    if t < T_PHASE:
        raise DomainError("one-cut catalog requires t >= -sqrt(2)")
    if m <= 0.0:
        raise DomainError("mass must be positive")
    model = quartic_model(t, m)
    images = [_entry(model, 0.0 + 0.0j, DIM, "x0")]

    if m > ONE_OVER_SQRT2:
        has_xd = T_PHASE <= t < 1.0 / m
        has_x1 = t >= T_PHASE
        has_y1 = t >= T_PHASE
    elif m == ONE_OVER_SQRT2:
        has_xd = T_PHASE <= t < 1.0 / m
        has_x1 = t > T_PHASE
        has_y1 = t > T_PHASE
    else:
        tc = t_dim_threshold(m)
        has_xd = tc <= t < 1.0 / m
        has_x1 = t > tc
        has_y1 = t > T_PHASE

    if has_xd:
        xd = math.sqrt(1.0 / m - t)
        images += [
            _entry(model, complex(xd), DIM, "xd+"),
            _entry(model, complex(-xd), DIM, "xd-"),
        ]
    x1, y1 = axis_bright_one_cut(m, t)
    if has_x1:
        if x1 is None:
            raise NumericError(f"expected real bright pair at (m={m}, t={t})")
        images += [
            _entry(model, complex(x1), BRIGHT, "x1+"),
            _entry(model, complex(-x1), BRIGHT, "x1-"),
        ]
    if has_y1:
        if y1 is None:
            raise NumericError(f"expected imaginary bright pair at (m={m}, t={t})")
        images += [
            _entry(model, complex(0.0, y1), BRIGHT, "iy1+"),
            _entry(model, complex(0.0, -y1), BRIGHT, "iy1-"),
        ]
    return ImageCatalog(m, t, "one_cut", tuple(images))


def images_origin_two_cut(m: float, t: float) -> ImageCatalog:
    """Central-source catalog in the two-cut phase (t <= -sqrt(2)), closed form.

    The origin is off the support here and always a bright image.  The outer
    real pair and the imaginary pair have explicit positions; the imaginary
    pair exists only in the window -m - 1/(2m) < t < -sqrt(2).
    """
    if t > T_PHASE:
        raise DomainError("two-cut catalog requires t <= -sqrt(2)")
    if m <= 0.0:
        raise DomainError("mass must be positive")
    model = quartic_model(t, m)
    images = [_entry(model, 0.0 + 0.0j, BRIGHT, "x0")]

    if m >= ONE_OVER_SQRT2:
        xd = math.sqrt(1.0 / m - t)
        images += [
            _entry(model, complex(xd), DIM, "xd+"),
            _entry(model, complex(-xd), DIM, "xd-"),
        ]
    if m > ONE_OVER_SQRT2:
        x2 = math.sqrt(m + 0.5 / m - t)
        images += [
            _entry(model, complex(x2), BRIGHT, "x2+"),
            _entry(model, complex(-x2), BRIGHT, "x2-"),
        ]
        if -m - 0.5 / m < t < T_PHASE:
            y2 = math.sqrt(m + 0.5 / m + t)
            images += [
                _entry(model, complex(0.0, y2), BRIGHT, "iy2+"),
                _entry(model, complex(0.0, -y2), BRIGHT, "iy2-"),
            ]
    return ImageCatalog(m, t, "two_cut", tuple(images))


def images_origin(m: float, t: float) -> ImageCatalog:
    """Dispatch on phase; the merge point t = -sqrt(2) uses the two-cut rules."""
    if t > T_PHASE:
        return images_origin_one_cut(m, t)
    return images_origin_two_cut(m, t)


@dataclass(frozen=True)
class PhaseScan:
    m: float
    rows: tuple[ImageCatalog, ...]
    diagnostics: dict


def phase_transition_scan(m: float, t_values) -> PhaseScan:
    """Catalogs along a t path plus continuity diagnostics across t = -sqrt(2).

    For m > 1/sqrt(2) the off-cut axis pairs of the two phases must meet at
    the transition; the reported gaps quantify that.  For smaller masses the
    diagnostics record which images collapse into the support instead.  The
    central image flips from dim to bright in every case.
    """
    t_values = [float(t) for t in t_values]
    if not t_values:
        raise DomainError("empty scan")
    rows = tuple(images_origin(m, t) for t in t_values)

    diagnostics: dict = {"x0_flips_dim_to_bright": True}
    delta = 1e-6
    if min(t_values) <= T_PHASE <= max(t_values):
        x1, y1 = axis_bright_one_cut(m, T_PHASE + delta)
        if m > ONE_OVER_SQRT2:
            x2 = math.sqrt(m + 0.5 / m - T_PHASE)
            y2 = math.sqrt(m + 0.5 / m + T_PHASE)
            diagnostics["real_pair_gap"] = abs(x1 - x2) if x1 is not None else None
            diagnostics["imag_pair_gap"] = abs(y1 - y2) if y1 is not None else None
        elif m == ONE_OVER_SQRT2:
            a_crit = math.sqrt(math.sqrt(2.0) - T_PHASE)
            xd = math.sqrt(1.0 / m - (T_PHASE + delta))
            diagnostics["real_pair_to_edge"] = (
                abs(x1 - a_crit) if x1 is not None else None
            )
            diagnostics["dim_pair_to_edge"] = abs(xd - a_crit)
            diagnostics["imag_pair_to_zero"] = abs(y1) if y1 is not None else None
        else:
            diagnostics["imag_pair_to_zero"] = abs(y1) if y1 is not None else None
    return PhaseScan(m, rows, diagnostics)


def images_quartic(
    m: float, t: float, w: complex, cfg: SolverConfig | None = None
) -> ImageSet:
    """General-source image set: dim images on the cuts, bright ones numerically.

    For w = 0 this reproduces the closed-form catalogs.
    """
    model = quartic_model(t, m)
    dim = solver.dim_images(model, w)
    bright = solver.bright_images_numeric(model, w, cfg)
    return ImageSet(
        source=complex(w),
        images=sort_images([*dim.images, *bright.images]),
        model=model.description,
    )
