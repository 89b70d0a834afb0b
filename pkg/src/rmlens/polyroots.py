"""Dense polynomial root finding for the lens solvers.

Coefficients are ascending: c[0] + c[1] z + ... + c[n] z**n.  The primary
method is Ehrlich-Aberth simultaneous iteration started on a Cauchy-bound
circle; numpy's companion-matrix eigensolver is the fallback whenever the
iteration does not certify every root against the residual bound.  Degrees
above 16 are rejected: everything in this package is a small dense
polynomial, and callers needing more should use a structured method.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError, NumericError

__all__ = ["MAX_DEGREE", "polyval", "real_roots_in", "roots", "trim"]

MAX_DEGREE = 16
# acceptance bound: |p(r)| <= factor * max|c| * max(1, |r|)**degree
RESIDUAL_FACTOR = 1e-10
CLUSTER_RADIUS = 1e-7
REAL_AXIS_TOL = 1e-9
MERGE_RADIUS = 1e-9


def trim(coeffs) -> np.ndarray:
    """Drop trailing coefficients that vanish relative to the largest one."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        raise DomainError("zero polynomial has no well-defined roots")
    keep = np.nonzero(np.abs(c) > 1e-13 * scale)[0]
    return c[: keep[-1] + 1]


def polyval(coeffs, z):
    return npoly.polyval(z, np.asarray(coeffs, dtype=complex))


def _residual_ok(c: np.ndarray, r: np.ndarray) -> np.ndarray:
    scale = np.max(np.abs(c))
    bound = RESIDUAL_FACTOR * scale * np.maximum(1.0, np.abs(r)) ** (len(c) - 1)
    return np.abs(npoly.polyval(r, c)) <= bound


def _aberth(c: np.ndarray, max_iter: int = 200) -> np.ndarray:
    """Simultaneous iteration; deterministic start on a Cauchy-bound circle."""
    n = len(c) - 1
    monic = c / c[-1]
    dmonic = npoly.polyder(monic)
    radius = 1.0 + np.max(np.abs(monic[:-1]))
    angles = 2.0 * np.pi * (np.arange(n) + 0.5) / n + 0.4
    z = radius * np.exp(1j * angles)
    for _ in range(max_iter):
        p = npoly.polyval(z, monic)
        dp = npoly.polyval(z, dmonic)
        dp = np.where(dp == 0, 1e-300, dp)
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - w * s
        denom = np.where(np.abs(denom) < 1e-300, 1.0, denom)
        step = w / denom
        z = z - step
        if np.all(np.abs(step) <= 1e-14 * np.maximum(1.0, np.abs(z))):
            break
    return z


def _cluster(rts: np.ndarray) -> np.ndarray:
    """Replace mutually close roots by their centroid, repeated per member.

    The repetition count is the reported multiplicity.
    """
    order = np.lexsort((rts.imag, rts.real))
    rts = rts[order]
    used = np.zeros(len(rts), dtype=bool)
    out = []
    for i in range(len(rts)):
        if used[i]:
            continue
        members = [i]
        used[i] = True
        for j in range(i + 1, len(rts)):
            if not used[j] and abs(rts[j] - rts[i]) <= CLUSTER_RADIUS:
                members.append(j)
                used[j] = True
        centroid = rts[members].mean()
        out.extend([centroid] * len(members))
    arr = np.asarray(out, dtype=complex)
    order = np.lexsort((arr.imag, arr.real))
    return arr[order]


def roots(coeffs) -> np.ndarray:
    """All complex roots with multiplicity, sorted by (real, imag).

    Every returned root satisfies the residual bound
    |p(r)| <= 1e-10 * max|c| * max(1, |r|)**degree.
    """
    c = trim(coeffs)
    degree = len(c) - 1
    if degree < 1:
        raise DomainError("degree must be at least 1")
    if degree > MAX_DEGREE:
        raise DomainError(f"degree {degree} exceeds the supported maximum {MAX_DEGREE}")
    if degree == 1:
        rts = np.array([-c[0] / c[1]])
    else:
        rts = _aberth(c)
        if not np.all(_residual_ok(c, rts)):
            rts = np.roots(c[::-1])
            if not np.all(_residual_ok(c, rts)):
                raise NumericError("root residuals exceed the acceptance bound")
    return _cluster(rts)


def real_roots_in(coeffs, lo: float, hi: float) -> list[float]:
    """Real roots inside [lo, hi], merged within 1e-9 and sorted ascending."""
    c = np.atleast_1d(np.asarray(coeffs))
    if np.iscomplexobj(c):
        if np.any(np.abs(c.imag) > 0.0):
            raise DomainError("real coefficients required")
        c = c.real
    c = c.astype(float)
    if lo > hi:
        raise DomainError(f"empty interval [{lo}, {hi}]")
    rts = roots(c)
    candidates = np.sort(rts.real[np.abs(rts.imag) < REAL_AXIS_TOL])
    dc = npoly.polyder(c)
    out: list[float] = []
    slack = 1e-12 * max(1.0, abs(lo), abs(hi))
    for r in candidates:
        # two guarded Newton steps sharpen clustered output
        for _ in range(2):
            dv = npoly.polyval(r, dc)
            if dv != 0.0:
                step = npoly.polyval(r, c) / dv
                if abs(step) < 1e-6 * max(1.0, abs(r)):
                    r = r - step
        if lo - slack <= r <= hi + slack:
            r = float(min(max(r, lo), hi))
            if not out or r - out[-1] > MERGE_RADIUS:
                out.append(r)
    return out
