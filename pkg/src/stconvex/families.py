"""Test functions with known answers.

* :func:`koebe_alpha` and :func:`random_starlike` produce starlike ``g`` of a
  prescribed order ``alpha`` (and class index ``n``).
* :func:`realize_w` builds a bounded ``w`` with ``w(0) = 0`` whose circle
  maxima are known in closed form where possible.
* :func:`synth_from_w` inverts the definition of ``w``: given ``g``, ``mu`` and
  ``w`` it returns the ``f`` with ``z f' = g (1 + w)**mu`` (or the reciprocal
  relation), so the true ``w`` of the pair is known exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import SpecInvalid
from .functionals import Direction
from .series import (
    DEFAULT_ORDER,
    AnalyticSeries,
    NormalizedFunction,
    antiderivative0,
    div,
    exp0,
    from_coeffs,
    identity,
    monomial,
    mul,
    pow1p,
)

MAX_ATOMS = 8
MIN_PHASE_GAP = 0.05


def koebe_alpha(alpha: float, order: int = DEFAULT_ORDER) -> NormalizedFunction:
    """``z / (1 - z)**(2(1 - alpha))``, extremal in the starlike class of order alpha."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    core = pow1p(monomial(-1.0, 1, order - 1), -2.0 * (1.0 - alpha))
    return NormalizedFunction(core.shift(1), 1)


@dataclass(frozen=True)
class HerglotzAtoms:
    """Point masses ``weights`` at angles ``phases`` on the unit circle."""

    weights: tuple[float, ...]
    phases: tuple[float, ...]

    def __post_init__(self):
        w = np.asarray(self.weights, float)
        if w.size == 0 or w.size != len(self.phases):
            raise ValueError("weights and phases must be nonempty and of equal length")
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")

    def moments(self, kmax: int) -> np.ndarray:
        """``m_k = sum_j weights_j exp(i k phases_j)`` for ``k = 0..kmax``."""
        k = np.arange(kmax + 1)[:, None]
        return np.exp(1j * k * np.asarray(self.phases)[None, :]) @ np.asarray(self.weights)


def random_atoms(rng: np.random.Generator, count: int | None = None) -> HerglotzAtoms:
    """Up to 8 atoms with phases at least 0.05 apart around the circle."""
    if count is None:
        count = int(rng.integers(1, MAX_ATOMS + 1))
    if not 1 <= count <= MAX_ATOMS:
        raise ValueError(f"atom count must be in 1..{MAX_ATOMS}")
    while True:
        phases = np.sort(rng.uniform(0.0, 2 * np.pi, count))
        gaps = np.diff(np.concatenate([phases, phases[:1] + 2 * np.pi]))
        if count == 1 or gaps.min() >= MIN_PHASE_GAP:
            break
    weights = rng.dirichlet(np.ones(count))
    weights = weights / weights.sum()
    return HerglotzAtoms(tuple(float(x) for x in weights), tuple(float(x) for x in phases))


def random_starlike(
    alpha: float, atoms: HerglotzAtoms, order: int = DEFAULT_ORDER, n_index: int = 1
) -> NormalizedFunction:
    """Solve ``z g'/g = alpha + (1 - alpha) p(z**n)`` with ``p`` the Herglotz
    integral of ``atoms``.

    ``p(z) = 1 + 2 sum_k m_k z^k``, so ``log(g/z) = sum_k 2(1-alpha) m_k z^{nk}/(nk)``.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    if n_index < 1:
        raise ValueError("n_index must be positive")
    top = order - 1
    kmax = top // n_index
    m = atoms.moments(kmax)
    log_gz = np.zeros(top + 1, complex)
    k = np.arange(1, kmax + 1)
    log_gz[n_index * k] = 2.0 * (1.0 - alpha) * m[1:] / (n_index * k)
    g = exp0(from_coeffs(log_gz)).shift(1)
    return NormalizedFunction(g, n_index)


class WKind(enum.Enum):
    SCALED_MONOMIAL = "cmono"
    MOBIUS_MONOMIAL = "cmobius"
    EXP_MONOMIAL = "cexp"
    POLY = "wpoly"


@dataclass(frozen=True)
class WSpec:
    """A bounded ``w`` with ``w(0) = 0``.

    SCALED_MONOMIAL: ``c z^m``; MOBIUS_MONOMIAL: ``c z^m (z + a)/(1 + conj(a) z)``
    with ``|a| < 1``; EXP_MONOMIAL: ``exp(c z^m) - 1`` (``1 + w`` never vanishes,
    yet ``|w|`` may exceed 1); POLY: explicit coefficients starting at ``z^0``.
    """

    kind: WKind
    c: complex = 0.0
    m: int = 1
    a: complex = 0.0
    coeffs: tuple[complex, ...] = field(default_factory=tuple)

    def degree_floor(self) -> int:
        """Lowest power that can carry a nonzero coefficient."""
        if self.kind is WKind.POLY:
            nz = [i for i, x in enumerate(self.coeffs) if x != 0]
            return nz[0] if nz else len(self.coeffs)
        return self.m

    def sup_on_circle(self, r: float) -> float | None:
        """Closed-form ``max_{|z|=r} |w|``; ``None`` when only a scan can tell."""
        if self.kind is WKind.SCALED_MONOMIAL:
            return abs(self.c) * r**self.m
        if self.kind is WKind.MOBIUS_MONOMIAL:
            a = abs(self.a)
            return abs(self.c) * r**self.m * (r + a) / (1.0 + a * r)
        if self.kind is WKind.EXP_MONOMIAL:
            return float(np.expm1(abs(self.c) * r**self.m))
        return None


def realize_w(spec: WSpec, n: int = 1, order: int = DEFAULT_ORDER) -> AnalyticSeries:
    if spec.kind is WKind.POLY:
        if not spec.coeffs or spec.coeffs[0] != 0:
            raise SpecInvalid("polynomial w needs w(0) = 0")
        if len(spec.coeffs) > order + 1:
            raise SpecInvalid("polynomial degree exceeds the truncation order")
    elif spec.m < 1:
        raise SpecInvalid("monomial degree must be at least 1")
    if spec.degree_floor() < n:
        raise SpecInvalid(f"w must vanish to order >= {n}, lowest power is {spec.degree_floor()}")
    if spec.kind is WKind.SCALED_MONOMIAL:
        return monomial(spec.c, spec.m, order)
    if spec.kind is WKind.MOBIUS_MONOMIAL:
        a = complex(spec.a)
        if abs(a) >= 1.0:
            raise SpecInvalid("Mobius parameter must satisfy |a| < 1")
        blaschke = div(from_coeffs([a, 1.0], order), from_coeffs([1.0, a.conjugate()], order))
        return mul(monomial(spec.c, spec.m, order), blaschke)
    if spec.kind is WKind.EXP_MONOMIAL:
        return exp0(monomial(spec.c, spec.m, order)) - 1.0
    return from_coeffs(list(spec.coeffs), order=order)


def synth_from_w(
    g: NormalizedFunction,
    mu: float,
    w: AnalyticSeries,
    direction: Direction = Direction.FORWARD,
) -> NormalizedFunction:
    """The ``f`` whose ``w`` with respect to ``g`` is exactly ``w``.

    Forward: ``z f' = g (1 + w)**mu``; reciprocal: ``z f' = g (1 + w)**(-mu)``.
    The class index is ``min(n_g, vanish(w))``.
    """
    if not 0.0 < mu <= 1.0:
        raise ValueError(f"mu must lie in (0, 1], got {mu}")
    if w.vanish < 1:
        raise SpecInvalid("w(0) must be 0")
    e = mu if direction is Direction.FORWARD else -mu
    zfp = mul(g.series, pow1p(w, e))
    f = antiderivative0(div(zfp, identity(zfp.order)))
    return NormalizedFunction(f, min(g.n_index, w.vanish))
