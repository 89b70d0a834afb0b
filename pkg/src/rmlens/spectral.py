"""Spectral lens models: eigenvalue densities on real cuts and their
branch-correct Cauchy transforms.

A model couples an even-degree confining polynomial V (no constant term),
the polynomial P appearing in (omega - V')**2 = P, the support cuts of the
density on the real axis, and a total mass m.  Off the cuts the transform
of the unit measure is omega(z) = V'(z) - sqrt(P(z)), with the square-root
branch pinned by omega ~ 1/z at infinity; on the cuts the principal-value
transform collapses to V'(x).  The density itself is rho(x) = |sqrt(P(x))|/pi.

sqrt(P) is realized as sqrt(leading) times a product of sqrt(z - r) factors
over the odd-multiplicity roots of P (all of which must be cut endpoints)
and polynomial factors (z - r)**(mult//2) for the rest.  Per-factor
principal branches make the cuts of the product cancel everywhere except
on the support, and a single global sign is fixed at a far probe point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import polyroots
from .errors import BranchCutError, DomainError, NumericError

__all__ = [
    "DensitySample",
    "LensModel",
    "Potential",
    "SpectralPolynomial",
    "SupportCuts",
    "boundary_values",
    "branch_sqrt_P",
    "cauchy_transform",
    "check_normalization",
    "density_samples",
    "eval_density",
    "generic_model",
]

# branch ambiguity tube around the support
CUT_TUBE = 1e-12
# cut endpoints must sit on odd-order roots of P within this radius
ENDPOINT_ROOT_TOL = 1e-6
# far probe fixing the global square-root sign
_SIGN_PROBE = 1e6 * (1.0 + 1.0j)


@dataclass(frozen=True)
class Potential:
    """Real polynomial V(x) = sum_{i>=1} t_i x^i, even degree, t_{2p} > 0."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(v) for v in self.coefficients)
        object.__setattr__(self, "coefficients", c)
        if len(c) < 2 or len(c) % 2 != 0:
            raise DomainError("potential degree must be even and at least 2")
        if c[-1] <= 0.0:
            raise DomainError("leading potential coefficient must be positive")

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    @cached_property
    def _c(self) -> np.ndarray:
        return np.concatenate(([0.0], np.asarray(self.coefficients)))

    @cached_property
    def _dc(self) -> np.ndarray:
        return npoly.polyder(self._c)

    @cached_property
    def _ddc(self) -> np.ndarray:
        return npoly.polyder(self._c, 2)

    def __call__(self, z):
        return npoly.polyval(z, self._c)

    def deriv(self, z):
        return npoly.polyval(z, self._dc)

    def deriv2(self, z):
        return npoly.polyval(z, self._ddc)


@dataclass(frozen=True)
class SupportCuts:
    """Ordered, disjoint closed intervals [a_i, b_i] on the real axis."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        if not ivs:
            raise DomainError("at least one cut is required")
        for a, b in ivs:
            if not a < b:
                raise DomainError(f"degenerate cut [{a}, {b}]")
        for (_, b), (a2, _) in zip(ivs, ivs[1:]):
            if not b < a2:
                raise DomainError("cuts must be disjoint and ordered")

    @property
    def endpoints(self) -> tuple[float, ...]:
        return tuple(e for iv in self.intervals for e in iv)

    @property
    def span(self) -> float:
        """Largest endpoint magnitude."""
        return max(abs(e) for e in self.endpoints)

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return any(a - slack <= x <= b + slack for a, b in self.intervals)

    def distance(self, z):
        """Euclidean distance to the union of cuts; works on arrays."""
        zc = np.asarray(z, dtype=complex)
        d = np.full(zc.shape, np.inf)
        for a, b in self.intervals:
            d = np.minimum(d, np.abs(zc - np.clip(zc.real, a, b)))
        return d if zc.shape else float(d)


@dataclass(frozen=True)
class SpectralPolynomial:
    """P(z) with its root clusters; (omega - V')**2 = P on the model."""

    coefficients: tuple[float, ...]
    root_clusters: tuple[tuple[complex, int], ...]

    @classmethod
    def from_coefficients(cls, coeffs) -> "SpectralPolynomial":
        c = np.asarray(coeffs, dtype=float)
        rts = polyroots.roots(c)
        clusters: list[tuple[complex, int]] = []
        for r in rts:
            if clusters and clusters[-1][0] == r:
                clusters[-1] = (r, clusters[-1][1] + 1)
            else:
                clusters.append((complex(r), 1))
        return cls(tuple(float(v) for v in c), tuple(clusters))

    @classmethod
    def from_roots(cls, leading: float, clusters) -> "SpectralPolynomial":
        roots_list: list[complex] = []
        for r, mult in clusters:
            roots_list.extend([complex(r)] * int(mult))
        c = leading * npoly.polyfromroots(roots_list)
        if np.max(np.abs(c.imag)) > 1e-9 * np.max(np.abs(c)):
            raise DomainError("root set does not define a real polynomial")
        return cls(
            tuple(float(v) for v in c.real),
            tuple((complex(r), int(m)) for r, m in clusters),
        )

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> float:
        return self.coefficients[-1]

    def __call__(self, z):
        return npoly.polyval(z, np.asarray(self.coefficients))


@dataclass(frozen=True)
class DensitySample:
    x: float
    rho: float


@dataclass(frozen=True)
class LensModel:
    """Full lens description: potential, spectral polynomial, cuts, mass."""

    potential: Potential
    spectral: SpectralPolynomial
    cuts: SupportCuts
    mass: float
    name: str = "generic"

    def __post_init__(self):
        object.__setattr__(self, "mass", float(self.mass))
        if self.mass <= 0.0:
            raise DomainError("mass must be positive")
        if self.spectral.degree != 2 * self.potential.degree - 2:
            raise DomainError(
                "deg P must equal 2 deg V - 2; got "
                f"{self.spectral.degree} vs potential degree {self.potential.degree}"
            )
        if self.spectral.leading <= 0.0:
            raise DomainError("leading coefficient of P must be positive")
        odd = [r for r, m in self.spectral.root_clusters if m % 2 == 1]
        endpoints = self.cuts.endpoints
        if len(odd) != len(endpoints):
            raise DomainError(
                "number of odd-multiplicity roots of P must match cut endpoints"
            )
        for e in endpoints:
            near = min(abs(r - e) for r in odd)
            if near > ENDPOINT_ROOT_TOL * max(1.0, abs(e)):
                raise DomainError(f"cut endpoint {e} is not an odd-order root of P")

    # --- cached branch machinery -------------------------------------------

    @cached_property
    def _odd_roots(self) -> np.ndarray:
        odd = sorted(
            r.real for r, m in self.spectral.root_clusters if m % 2 == 1
        )
        return np.asarray(odd, dtype=float)

    @cached_property
    def _even_part(self) -> np.ndarray:
        """Coefficients of prod (z - r)**(mult//2)."""
        roots_list: list[complex] = []
        for r, m in self.spectral.root_clusters:
            roots_list.extend([r] * (m // 2))
        if not roots_list:
            return np.asarray([1.0 + 0.0j])
        return npoly.polyfromroots(roots_list)

    @cached_property
    def _even_part_deriv(self) -> np.ndarray:
        return npoly.polyder(self._even_part)

    @cached_property
    def _sqrt_leading(self) -> float:
        return math.sqrt(self.spectral.leading)

    @cached_property
    def _branch_sign(self) -> float:
        """Global sign making V' - sqrt(P) ~ 1/z at infinity."""
        z0 = _SIGN_PROBE
        cand = self._sqrt_unsigned(z0)
        vp = self.potential.deriv(z0)
        err_plus = abs(z0 * (vp - cand) - 1.0)
        err_minus = abs(z0 * (vp + cand) - 1.0)
        return 1.0 if err_plus <= err_minus else -1.0

    @cached_property
    def _near_field_coeffs(self) -> np.ndarray:
        """Coefficients of N = V'**2 - P with exact-zero snapping.

        omega = N / (V' + sqrt(P)) is the cancellation-free far-field form;
        snapping removes coefficient-level roundoff that would otherwise be
        amplified by large |z|.
        """
        dv = npoly.polyder(np.concatenate(([0.0], np.asarray(self.potential.coefficients))))
        n = npoly.polysub(npoly.polymul(dv, dv), np.asarray(self.spectral.coefficients))
        scale = np.max(np.abs(n))
        n = np.where(np.abs(n) > 1e-12 * scale, n, 0.0)
        return n

    def _sqrt_unsigned(self, z):
        zc = np.asarray(z, dtype=complex)
        out = np.full(zc.shape, self._sqrt_leading, dtype=complex)
        out = out * npoly.polyval(zc, self._even_part)
        for r in self._odd_roots:
            out = out * np.sqrt(zc - r)
        return out

    def _sqrt_branch(self, z):
        """sqrt(P(z)), branch cut confined to the support; no tube check."""
        return self._branch_sign * self._sqrt_unsigned(z)

    def _sqrt_branch_with_deriv(self, z):
        """(sqrt(P), d/dz sqrt(P)); regular off the support."""
        zc = np.asarray(z, dtype=complex)
        q = npoly.polyval(zc, self._even_part)
        dq = npoly.polyval(zc, self._even_part_deriv)
        r_prod = np.ones(zc.shape, dtype=complex)
        half_sum = np.zeros(zc.shape, dtype=complex)
        for r in self._odd_roots:
            fac = np.sqrt(zc - r)
            r_prod = r_prod * fac
            half_sum = half_sum + 0.5 / (zc - r)
        base = self._branch_sign * self._sqrt_leading
        value = base * q * r_prod
        deriv = base * r_prod * (dq + q * half_sum)
        return value, deriv

    @cached_property
    def description(self) -> str:
        return self.name


# --- operations --------------------------------------------------------------


def eval_density(model: LensModel, x):
    """Unit-normalized density rho(x) = |sqrt(P(x))| / pi on the support.

    The modulus is evaluated from the root factorization of P, which keeps
    endpoint zeros exact.  Raises DomainError off the support.
    """
    xa = np.asarray(x, dtype=float)
    inside = np.zeros(xa.shape, dtype=bool)
    for a, b in model.cuts.intervals:
        inside |= (xa >= a - 1e-12) & (xa <= b + 1e-12)
    if not np.all(inside):
        raise DomainError("density evaluation point outside the support")
    mod = np.full(xa.shape, model.spectral.leading)
    for r, mult in model.spectral.root_clusters:
        mod = mod * (np.abs(xa - r) ** mult)
    out = np.sqrt(mod) / math.pi
    return out if xa.shape else float(out)


def density_samples(model: LensModel, n_per_cut: int = 200) -> list[list[DensitySample]]:
    """Evenly sampled density per cut, endpoints included."""
    out = []
    for a, b in model.cuts.intervals:
        xs = np.linspace(a, b, n_per_cut)
        rho = eval_density(model, xs)
        out.append([DensitySample(float(x), float(r)) for x, r in zip(xs, rho)])
    return out


def _chebyshev_gauss2(n: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, n + 1)
    theta = k * np.pi / (n + 1)
    return np.cos(theta), (np.pi / (n + 1)) * np.sin(theta) ** 2


def check_normalization(model: LensModel, nodes: int = 256) -> float:
    """Integral of the unit density over the support.

    Gauss-Chebyshev (second kind) per cut absorbs the square-root endpoint
    factors exactly; the caller asserts |result - 1| against its tolerance.
    Raises NumericError when halving the node count shifts the estimate.
    """

    def quad(n: int) -> float:
        s, w = _chebyshev_gauss2(n)
        total = 0.0
        for a, b in model.cuts.intervals:
            h = 0.5 * (b - a)
            x = 0.5 * (a + b) + h * s
            q = eval_density(model, x) / np.sqrt((x - a) * (b - x))
            total += h * h * float(np.sum(w * q))
        return total

    full = quad(nodes)
    half = quad(nodes // 2)
    if abs(full - half) > 1e-8:
        raise NumericError(f"normalization quadrature did not settle: {full}")
    return full


def branch_sqrt_P(model: LensModel, z):
    """sqrt(P(z)) with V'(z) - sqrt(P(z)) = 1/z + O(1/z^2) at infinity.

    Continuous on the plane minus the support.  Points within 1e-12 of the
    support are rejected: the branch is ambiguous there.
    """
    if np.any(np.asarray(model.cuts.distance(z)) <= CUT_TUBE):
        raise BranchCutError("point lies within the branch-ambiguity tube")
    out = model._sqrt_branch(z)
    return out if np.asarray(z).shape else complex(out)


def cauchy_transform(model: LensModel, z, total_mass: bool = False):
    """Transform of the eigenvalue measure, everywhere on the plane.

    Off the support: V'(z) - sqrt(P(z)); on the support (and within the
    ambiguity tube): the principal value V'(x).  Far from the support the
    algebraically equivalent form (V'**2 - P) / (V' + sqrt(P)) avoids the
    catastrophic cancellation of the direct difference.  With
    ``total_mass=True`` the result is scaled by the model mass.
    """
    zc = np.asarray(z, dtype=complex)
    scalar = zc.shape == ()
    zc = np.atleast_1d(zc)
    out = np.empty(zc.shape, dtype=complex)

    on_cut = model.cuts.distance(zc) <= CUT_TUBE
    far = np.abs(zc) >= 4.0 * model.cuts.span + 4.0
    near = ~on_cut & ~far

    if np.any(on_cut):
        out[on_cut] = model.potential.deriv(zc[on_cut].real)
    if np.any(near):
        zn = zc[near]
        out[near] = model.potential.deriv(zn) - model._sqrt_branch(zn)
    if np.any(far):
        zf = zc[far]
        num = npoly.polyval(zf, model._near_field_coeffs)
        out[far] = num / (model.potential.deriv(zf) + model._sqrt_branch(zf))

    if total_mass:
        out = model.mass * out
    return complex(out[0]) if scalar else out


def boundary_values(model: LensModel, x: float) -> tuple[complex, complex]:
    """One-sided limits (omega_plus, omega_minus) of the unit transform on a cut.

    Evaluated through signed zeros, so these are the exact limits
    V'(x) -/+ i pi rho(x) rather than finite-epsilon approximations.
    """
    if not model.cuts.contains(x):
        raise DomainError("boundary values are defined on the support only")
    vp = complex(model.potential.deriv(x))
    sq_plus = complex(model._sqrt_branch(complex(x, +0.0)))
    sq_minus = complex(model._sqrt_branch(complex(x, -0.0)))
    return vp - sq_plus, vp - sq_minus


def generic_model(
    potential_coeffs,
    spectral_coeffs,
    cuts,
    mass: float,
    name: str = "generic",
    normalization_tol: float = 1e-9,
) -> LensModel:
    """Model from user-supplied V, P and cuts; validates unit normalization.

    There is no general constructor of P from V alone, so the caller must
    provide a consistent pair.
    """
    model = LensModel(
        potential=Potential(tuple(float(v) for v in potential_coeffs)),
        spectral=SpectralPolynomial.from_coefficients(spectral_coeffs),
        cuts=SupportCuts(tuple((float(a), float(b)) for a, b in cuts)),
        mass=mass,
        name=name,
    )
    norm = check_normalization(model)
    if abs(norm - 1.0) > normalization_tol:
        raise DomainError(f"density integrates to {norm}, not 1")
    return model
