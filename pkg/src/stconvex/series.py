"""Truncated complex power series.

Every analytic function in the package is an :class:`AnalyticSeries`: the
Taylor coefficients ``c_0 .. c_N`` about the origin, where ``N`` is the
truncation order. Coefficients above ``N`` are unknown, not zero, so binary
operations truncate to the shorter operand.

Fractional powers are formed at the series level (constant term exactly 1),
which fixes the analytic branch once and for all::

    >>> h = from_coeffs([0, 1], order=4)
    >>> pow1p(h, 0.5).coeffs.real.round(4)
    array([ 1.    ,  0.5   , -0.125 ,  0.0625, -0.0391])
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Number

import numpy as np
from scipy.signal import lfilter

from .errors import (
    BranchPrecondition,
    DivisionOrderError,
    NonFiniteCoefficient,
    OutsideDisk,
)

DEFAULT_ORDER = 128
ZERO_TOL = 1e-13
R_MAX = 0.995
TAIL_WINDOW = 8
MAX_INT_POWER = 64
# largest decay ratio accepted from the tail fit
_Q_CAP = 1.0 - 1e-9


def _vanish_index(c: np.ndarray) -> int:
    mags = np.abs(c)
    scale = mags.max() if mags.size else 0.0
    if scale == 0.0:
        return len(c)
    nz = np.flatnonzero(mags > ZERO_TOL * scale)
    return int(nz[0]) if nz.size else len(c)


@dataclass(frozen=True, eq=False)
class AnalyticSeries:
    """Truncated series ``sum_{k<=order} coeffs[k] z**k``.

    Construct through :func:`from_coeffs`; the constructor canonicalizes the
    coefficients (entries below the vanishing order are set to exactly zero)
    and freezes the array.
    """

    coeffs: np.ndarray
    vanish: int = field(init=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise NonFiniteCoefficient("coefficients must be finite")
        v = _vanish_index(c)
        c[:v] = 0.0
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "vanish", v)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        more = ", ..." if self.order >= 6 else ""
        return f"AnalyticSeries([{head}{more}], order={self.order}, vanish={self.vanish})"

    def is_zero(self) -> bool:
        return self.vanish > self.order

    def truncate(self, order: int) -> AnalyticSeries:
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return AnalyticSeries(self.coeffs[: order + 1])

    def shift(self, k: int = 1) -> AnalyticSeries:
        """Multiply by ``z**k``; the order grows by ``k``."""
        return AnalyticSeries(np.concatenate([np.zeros(k, complex), self.coeffs]))

    def __add__(self, other):
        if isinstance(other, Number):
            c = self.coeffs.copy()
            c[0] += other
            return AnalyticSeries(c)
        n = min(self.order, other.order) + 1
        return AnalyticSeries(self.coeffs[:n] + other.coeffs[:n])

    __radd__ = __add__

    def __neg__(self):
        return AnalyticSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return AnalyticSeries(self.coeffs * other)
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return AnalyticSeries(self.coeffs / other)
        return div(self, other)

    def __call__(self, z):
        return evaluate(self, z).value


@dataclass(frozen=True)
class EvalResult:
    """Point value plus estimated truncation error (arrays for array input)."""

    value: complex | np.ndarray
    tail_bound: float | np.ndarray


def from_coeffs(coeffs, order: int | None = None) -> AnalyticSeries:
    """Series from explicit coefficients, zero-padded up to ``order``."""
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size == 0:
        raise ValueError("coefficient list is empty")
    if not np.all(np.isfinite(c)):
        raise NonFiniteCoefficient("coefficients must be finite")
    if order is not None:
        if order + 1 < c.size:
            raise ValueError(f"{c.size} coefficients do not fit order {order}")
        c = np.concatenate([c, np.zeros(order + 1 - c.size, complex)])
    return AnalyticSeries(c)


def constant(value, order: int = DEFAULT_ORDER) -> AnalyticSeries:
    return from_coeffs([value], order=order)


def monomial(c, m: int, order: int = DEFAULT_ORDER) -> AnalyticSeries:
    coeffs = np.zeros(order + 1, complex)
    coeffs[m] = c
    return AnalyticSeries(coeffs)


def identity(order: int = DEFAULT_ORDER) -> AnalyticSeries:
    return monomial(1.0, 1, order)


def vanishing_order(a: AnalyticSeries) -> int:
    return a.vanish


def mul(a: AnalyticSeries, b: AnalyticSeries) -> AnalyticSeries:
    n = min(a.order, b.order) + 1
    return AnalyticSeries(np.convolve(a.coeffs[:n], b.coeffs[:n])[:n])


def div(a: AnalyticSeries, b: AnalyticSeries) -> AnalyticSeries:
    """Quotient ``a / b``.

    Both operands are shifted down by ``vanish(b)`` first, so the result has
    order ``min(order_a, order_b) - vanish(b)``.
    """
    v = b.vanish
    if b.is_zero():
        raise DivisionOrderError("division by the zero series")
    if v > a.vanish and not a.is_zero():
        raise DivisionOrderError(
            f"divisor vanishes to order {v} > dividend order {a.vanish}"
        )
    n = min(a.order, b.order) + 1 - v
    num = a.coeffs[v : v + n]
    den = b.coeffs[v : v + n]
    impulse = np.zeros(n, complex)
    impulse[0] = 1.0
    # series of num/den: the impulse response of the rational filter
    return AnalyticSeries(lfilter(num, den, impulse))


def derivative(a: AnalyticSeries) -> AnalyticSeries:
    if a.order == 0:
        return from_coeffs([0.0])
    k = np.arange(1, a.order + 1)
    return AnalyticSeries(a.coeffs[1:] * k)


def antiderivative0(a: AnalyticSeries) -> AnalyticSeries:
    k = np.arange(1, a.order + 2)
    return AnalyticSeries(np.concatenate([[0.0], a.coeffs / k]))


def log1p(h: AnalyticSeries) -> AnalyticSeries:
    """``log(1 + h)`` for ``h(0) = 0``, via the integral of ``h'/(1+h)``."""
    if h.vanish == 0:
        raise BranchPrecondition("log1p needs h(0) = 0")
    if h.order == 0:
        return from_coeffs([0.0])
    return antiderivative0(div(derivative(h), h + 1.0))


def exp0(s: AnalyticSeries) -> AnalyticSeries:
    """``exp(s)`` for ``s(0) = 0`` using ``E' = s' E``."""
    if s.vanish == 0:
        raise BranchPrecondition("exp0 needs s(0) = 0")
    n = s.order
    js = np.arange(n + 1) * s.coeffs
    e = np.zeros(n + 1, complex)
    e[0] = 1.0
    for k in range(1, n + 1):
        e[k] = np.dot(js[1 : k + 1], e[k - 1 :: -1][:k]) / k
    return AnalyticSeries(e)


def pow1p(h: AnalyticSeries, e: float) -> AnalyticSeries:
    """``(1 + h)**e`` on the branch equal to 1 at the origin."""
    if h.vanish == 0:
        raise BranchPrecondition(f"(1+h)**e needs h(0) = 0, got h(0) = {h.coeffs[0]}")
    if e == 0 or h.is_zero():
        return constant(1.0, h.order)
    if float(e).is_integer() and abs(e) <= MAX_INT_POWER:
        # repeated squaring stays exact when 1 + h has zeros in the disk
        base, k = h + 1.0, int(abs(e))
        out = constant(1.0, h.order)
        while k:
            if k & 1:
                out = mul(out, base)
            base, k = mul(base, base), k >> 1
        return out if e > 0 else div(constant(1.0, h.order), out)
    return exp0(log1p(h) * float(e))


def _decay_ratio(tail: np.ndarray) -> float:
    nz = np.flatnonzero(tail > 0)
    if nz.size == 0:
        return 0.0
    if nz.size == 1:
        return _Q_CAP
    slope = np.polyfit(nz.astype(float), np.log(tail[nz]), 1)[0]
    return float(np.clip(np.exp(slope), 0.0, _Q_CAP))


def tail_parameters(a: AnalyticSeries) -> tuple[float, float]:
    """``(c, q)``: magnitude scale at index ``N`` and fitted decay ratio.

    The scale is ``max_j |c_j| q**(N-j)`` over the fit window so that an
    isolated zero at ``c_N`` (odd or even series) does not hide the tail.
    """
    w = min(TAIL_WINDOW, len(a))
    tail = np.abs(a.coeffs[-w:])
    q = _decay_ratio(tail)
    powers = q ** np.arange(w - 1, -1, -1, dtype=float)
    return float(np.max(tail * powers)), q


def horner(coeffs: np.ndarray, z):
    """Polynomial value at ``z`` (scalar or array), ignoring trailing zeros."""
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return np.zeros_like(z, dtype=complex)
    c = coeffs[: nz[-1] + 1]
    if np.ndim(z) == 0:
        return np.dot(c, complex(z) ** np.arange(c.size))
    return np.polyval(c[::-1], z)


def evaluate(a: AnalyticSeries, z) -> EvalResult:
    """Horner evaluation with a geometric tail estimate.

    ``tail = c |z|^N q|z| / (1 - q|z|)`` with ``(c, q)`` from
    :func:`tail_parameters`; infinite when ``q|z| >= 1``.
    """
    zz = np.asarray(z, dtype=complex)
    r = np.abs(zz)
    if np.any(r >= 1.0):
        raise OutsideDisk(f"|z| = {r.max():.6g} is not inside the unit disk")
    value = horner(a.coeffs, zz)
    c, q = tail_parameters(a)
    if c == 0.0:
        tail = np.zeros_like(r)
    else:
        qz = q * r
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            tail = np.where(qz < 1.0, c * r**a.order * qz / (1.0 - qz), np.inf)
    if zz.ndim == 0:
        return EvalResult(complex(value), float(tail))
    return EvalResult(value, tail)


def coeff_distance(a: AnalyticSeries, b: AnalyticSeries) -> float:
    """Max coefficient difference over the common order."""
    n = min(a.order, b.order) + 1
    return float(np.max(np.abs(a.coeffs[:n] - b.coeffs[:n])))


@dataclass(frozen=True, eq=False)
class NormalizedFunction:
    """A series ``z + a_{n+1} z**(n+1) + ...`` in the class with index ``n``."""

    series: AnalyticSeries
    n_index: int

    def __post_init__(self):
        c = self.series.coeffs
        if self.series.order < 1:
            raise ValueError("a normalized function needs order >= 1")
        if self.n_index < 1:
            raise ValueError(f"class index must be positive, got {self.n_index}")
        tol = _gap_tol(c)
        if abs(c[0]) > tol or abs(c[1] - 1.0) > tol:
            raise ValueError(f"not normalized: f(0) = {c[0]:.3g}, f'(0) = {c[1]:.3g}")
        gap = np.abs(c[2 : self.n_index + 1])
        if gap.size and gap.max() > tol:
            raise ValueError(f"coefficients 2..{self.n_index} must vanish for index {self.n_index}")

    @property
    def order(self) -> int:
        return self.series.order


def _gap_tol(c: np.ndarray) -> float:
    return 1e-10 * max(1.0, float(np.abs(c).max()))


def max_class_index(a: AnalyticSeries) -> int:
    """Largest ``n`` such that ``a - z`` vanishes to order ``n + 1``.

    Capped at the truncation order when ``a == z`` up to truncation.
    """
    c = a.coeffs
    tol = _gap_tol(c)
    nz = np.flatnonzero(np.abs(c[2:]) > tol)
    return int(nz[0]) + 1 if nz.size else a.order


def normalized(a: AnalyticSeries, n_index: int | None = None) -> NormalizedFunction:
    """Wrap ``a`` as a normalized function; infer the class index if not given."""
    if n_index is None:
        n_index = max_class_index(a)
    return NormalizedFunction(a, n_index)
