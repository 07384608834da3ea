"""Composite functionals of a pair ``(f, g)``.

With ``w = (z f'/g)**(1/mu) - 1`` (forward) or ``w = (g/(z f'))**(1/mu) - 1``
(reciprocal), logarithmic differentiation gives

    forward:     1 + z f''/f' - z g'/g =  mu z w'/(w + 1)
    reciprocal: -1 - z f''/f' + z g'/g =  mu z w'/(w + 1)

Everything here returns a series; point values go through
:func:`stconvex.series.evaluate` so that each number carries a tail bound.
The two scalar helpers at the bottom are the boundary algebra used once a
maximum-modulus point with ``w(z0) = rho e^{i theta}`` is known.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import SingularPoint
from .series import (
    AnalyticSeries,
    NormalizedFunction,
    derivative,
    div,
    pow1p,
)


class Direction(enum.Enum):
    FORWARD = "forward"
    RECIPROCAL = "reciprocal"


@dataclass(frozen=True, eq=False)
class FunctionPair:
    f: NormalizedFunction
    g: NormalizedFunction
    n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n", min(self.f.n_index, self.g.n_index))


def z_derivative(a: AnalyticSeries) -> AnalyticSeries:
    """``z a'(z)``."""
    return derivative(a).shift(1)


def log_derivative(g: AnalyticSeries) -> AnalyticSeries:
    """``z g'/g``."""
    return div(z_derivative(g), g)


def convexity_term(f: AnalyticSeries) -> AnalyticSeries:
    """``1 + z f''/f'``."""
    fp = derivative(f)
    return div(z_derivative(fp), fp) + 1.0


def ratio_minus_one(p: FunctionPair, d: Direction) -> AnalyticSeries:
    zfp = z_derivative(p.f.series)
    g = p.g.series
    if d is Direction.FORWARD:
        return div(zfp, g) - 1.0
    return div(g, zfp) - 1.0


def w_series(p: FunctionPair, mu: float, d: Direction) -> AnalyticSeries:
    if not 0.0 < mu <= 1.0:
        raise ValueError(f"mu must lie in (0, 1], got {mu}")
    return pow1p(ratio_minus_one(p, d), 1.0 / mu) - 1.0


def logderiv_combo(p: FunctionPair, d: Direction) -> AnalyticSeries:
    combo = convexity_term(p.f.series) - log_derivative(p.g.series)
    return combo if d is Direction.FORWARD else -combo


def jack_term(w: AnalyticSeries, mu: float) -> AnalyticSeries:
    """``mu z w'/(w + 1)``."""
    return div(z_derivative(w), w + 1.0) * mu


def identity_residual(p: FunctionPair, mu: float, d: Direction) -> AnalyticSeries:
    return logderiv_combo(p, d) - jack_term(w_series(p, mu, d), mu)


def halfplane_re(delta: complex, mu: float, k: float, theta: float) -> float:
    """Re(delta + mu k w/(w+1)) at ``w = e^{i theta}``; equals Re(delta) + mu k/2."""
    half = 0.5 * theta
    c = math.cos(half)
    if abs(c) < 1e-15:
        raise SingularPoint("w(z0) = -1 at theta = pi")
    # u/(u+1) = e^{i theta/2} / (2 cos(theta/2)) avoids cancellation in u + 1 near theta = pi
    ratio = complex(c, math.sin(half)) / (2.0 * c)
    return (delta + mu * k * ratio).real


def boundary_modulus(
    delta: float, mu: float, k: float, rho: float, theta: float
) -> float:
    """|delta + mu k w/(w+1)| at ``w = rho e^{i theta}``, from the expanded square.

    The square is ``delta^2 + mu delta k + (mu delta k (rho^2-1) + mu^2 rho^2 k^2)/D``
    with ``D = rho^2 + 1 + 2 rho cos(theta) = |w + 1|^2``.
    """
    # rho^2 + 1 + 2 rho cos(theta), rewritten to stay accurate near theta = pi
    denom = (1.0 - rho) ** 2 + 4.0 * rho * math.cos(0.5 * theta) ** 2
    if denom <= 1e-300 or abs(rho * complex(math.cos(theta), math.sin(theta)) + 1.0) < 1e-15:
        raise SingularPoint("rho e^{i theta} = -1")
    num = mu * delta * k * (rho * rho - 1.0) + (mu * rho * k) ** 2
    sq = delta * delta + mu * delta * k + num / denom
    return math.sqrt(max(sq, 0.0))


def boundary_modulus_direct(
    delta: float, mu: float, k: float, rho: float, theta: float
) -> float:
    """Same quantity, evaluated as a complex modulus."""
    w = rho * complex(math.cos(theta), math.sin(theta))
    if abs(w + 1.0) < 1e-15:
        raise SingularPoint("rho e^{i theta} = -1")
    return abs(delta + mu * k * w / (w + 1.0))
