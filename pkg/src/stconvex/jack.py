"""Numerical probe of Jack's lemma.

If ``w(0) = 0`` and ``|w|`` restricted to ``|z| <= r`` peaks at ``z0`` with
``|z0| = r``, then ``z0 w'(z0)/w(z0)`` is a real number ``k`` no smaller than
the vanishing order of ``w``. The probe locates ``z0`` by a coarse angular scan
followed by golden-section refinement and reports the quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMax, OutsideDisk, ZeroDenominator
from .series import R_MAX, AnalyticSeries, derivative, evaluate

DEFAULT_SAMPLES = 512
DEFAULT_TOL = 1e-6
ZERO_MODULUS = 1e-14
FLAT_RTOL = 1e-12
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class JackReport:
    r: float
    z0: complex
    wmax: float
    quotient: complex
    k_est: float
    imag_residual: float
    order_ok: bool
    vanish: int
    flat: bool = False
    degenerate: bool = False

    @property
    def real_ok(self) -> bool:
        return self.imag_residual < DEFAULT_TOL


def _circle_modsq(w: AnalyticSeries, radii: np.ndarray):
    """``theta -> |w(radii e^{i theta})|^2`` as Fourier sums.

    Returns ``(modsq, scan)``: ``modsq`` takes one angle per radius, ``scan(m)``
    gives the values at ``m`` equally spaced angles on every circle.
    """
    nz = np.flatnonzero(w.coeffs)
    top = nz[-1] + 1 if nz.size else 1
    k = np.arange(top)
    scaled = w.coeffs[:top][None, :] * np.asarray(radii, float)[:, None] ** k[None, :]

    def modsq(theta):
        t = np.asarray(theta, dtype=float)
        return np.abs(np.einsum("rk,rk->r", np.exp(1j * t[:, None] * k), scaled)) ** 2

    def scan(m):
        # values at 2 pi j/m: fold coefficients modulo m, then one inverse FFT
        folded = np.zeros((scaled.shape[0], m), complex)
        for start in range(0, top, m):
            chunk = scaled[:, start : start + m]
            folded[:, : chunk.shape[1]] += chunk
        return np.abs(np.fft.ifft(folded, axis=1) * m) ** 2

    return modsq, scan


def golden_max(fun, lo, hi, xtol: float = 1e-12):
    """Maximizer of a unimodal ``fun`` on ``[lo, hi]`` by golden-section search.

    Runs elementwise over arrays of independent brackets; ``fun`` maps an
    array of abscissae to an array of values.
    """
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fun(c), fun(d)
    while np.max(b - a) > xtol:
        left = fc >= fd
        a, b = np.where(left, a, c), np.where(left, d, b)
        keep, fkeep = np.where(left, c, d), np.where(left, fc, fd)
        probe = np.where(left, b - _INVPHI * (b - a), a + _INVPHI * (b - a))
        fp = fun(probe)
        c, fc = np.where(left, probe, keep), np.where(left, fp, fkeep)
        d, fd = np.where(left, keep, probe), np.where(left, fkeep, fp)
    return 0.5 * (a + b)


def max_on_circles(w: AnalyticSeries, radii, m: int = DEFAULT_SAMPLES):
    """Vectorized :func:`max_on_circle` over several radii.

    Returns arrays ``(z0, wmax, flat, degenerate)``; degenerate circles carry
    NaN in ``z0`` and ``wmax``.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    if np.any((radii <= 0.0) | (radii >= 1.0)):
        raise OutsideDisk(f"radii must lie in (0, 1), got {radii}")
    if m < 16:
        raise ValueError("need at least 16 angular samples")
    modsq, scan = _circle_modsq(w, radii)
    thetas = 2.0 * np.pi * np.arange(m) / m
    vals = scan(m)
    top, bottom = vals.max(axis=1), vals.min(axis=1)
    degenerate = top < ZERO_MODULUS**2
    flat = ~degenerate & (top - bottom <= FLAT_RTOL * top)
    i = np.argmax(vals, axis=1)
    step = 2.0 * np.pi / m
    theta = golden_max(modsq, thetas[i] - step, thetas[i] + step)
    theta = np.where(flat | degenerate, 0.0, theta)
    z0 = radii * np.exp(1j * theta)
    wmax = np.sqrt(modsq(theta))
    z0 = np.where(degenerate, np.nan, z0)
    wmax = np.where(degenerate, np.nan, wmax)
    return z0, wmax, flat, degenerate


def max_on_circle(
    w: AnalyticSeries, r: float, m: int = DEFAULT_SAMPLES
) -> tuple[complex, float, bool]:
    """Locate ``argmax_{|z|=r} |w(z)|``.

    Coarse scan over ``m`` equally spaced angles, then golden-section
    refinement of the best bracket. Returns ``(z0, |w(z0)|, flat)``; ``flat``
    is set when ``|w|`` is constant on the circle to relative precision 1e-12,
    and ``z0`` is then the angle-0 point.
    """
    if not 0.0 < r < 1.0:
        raise OutsideDisk(f"radius {r} must lie in (0, 1)")
    z0, wmax, flat, degenerate = max_on_circles(w, [r], m)
    if degenerate[0]:
        raise DegenerateMax(f"w vanishes on |z| = {r}")
    return complex(z0[0]), float(wmax[0]), bool(flat[0])


def jack_quotient(w: AnalyticSeries, z0: complex) -> complex:
    """``z0 w'(z0) / w(z0)``."""
    wz = evaluate(w, z0).value
    if abs(wz) < ZERO_MODULUS:
        raise ZeroDenominator(f"|w(z0)| = {abs(wz):.3g} is too small")
    return z0 * evaluate(derivative(w), z0).value / wz


def jack_report(
    w: AnalyticSeries, r: float, tol: float = DEFAULT_TOL, m: int = DEFAULT_SAMPLES
) -> JackReport:
    n = w.vanish
    try:
        z0, wmax, flat = max_on_circle(w, r, m)
    except DegenerateMax:
        nan = float("nan")
        return JackReport(r, complex(nan, nan), 0.0, complex(nan, nan), nan, nan, False, n,
                          degenerate=True)
    q = jack_quotient(w, z0)
    return JackReport(
        r=r,
        z0=z0,
        wmax=wmax,
        quotient=q,
        k_est=q.real,
        imag_residual=abs(q.imag),
        order_ok=q.real >= n - tol,
        vanish=n,
        flat=flat,
    )


def jack_verify(
    w: AnalyticSeries,
    radii,
    tol: float = DEFAULT_TOL,
    m: int = DEFAULT_SAMPLES,
) -> list[JackReport]:
    """One :class:`JackReport` per radius; radii must lie in ``(0, R_MAX]``."""
    radii = [float(r) for r in radii]
    bad = [r for r in radii if not 0.0 < r <= R_MAX]
    if bad:
        raise OutsideDisk(f"radii outside (0, {R_MAX}]: {bad}")
    return [jack_report(w, r, tol, m) for r in radii]
