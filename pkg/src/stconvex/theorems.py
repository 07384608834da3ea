"""Hypothesis and conclusion checks for the five sufficient conditions.

Each theorem has the shape ``LHS(z) < RHS for all z  =>  |w(z)| < bound``,
where ``w`` is the forward ratio power (theorems 1-3) or the reciprocal one
(theorems 4-5). :func:`check` samples both sides on a :class:`DiskGrid` and
returns a :class:`Verdict`; a verdict is *consistent* unless the sampled
hypothesis holds while the sampled conclusion fails.

Besides the grid points, :func:`check` also samples the refined maximizer of
``|w|`` on every grid circle. Those are exactly the points where the proof
argument evaluates the hypothesis, so a sampled counterexample to the
conclusion cannot slip between grid angles.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import EvaluationUnreliable, GridEmpty, InvalidParameters
from .functionals import (
    Direction,
    FunctionPair,
    convexity_term,
    log_derivative,
    logderiv_combo,
    w_series,
)
from .jack import max_on_circles
from .series import (
    R_MAX,
    AnalyticSeries,
    NormalizedFunction,
    derivative,
    div,
    evaluate,
    identity,
)

log = logging.getLogger(__name__)

RELIABILITY_THRESHOLD = 1e-7
ZERO_VALUE_TOL = 1e-12
UNDEFINED = None

FORWARD_IDS = (1, 2, 3)
MODULUS_IDS = (3, 5)


@dataclass(frozen=True)
class TheoremParams:
    """Parameters of one theorem instance.

    ``delta`` is complex for theorems 1, 2, 4 and a positive real for 3, 5;
    ``rho`` is used by 3 and 5 only, ``alpha`` by 2 only.
    """

    id: int
    mu: float
    beta: float
    gamma: float
    delta: complex
    n: int = 1
    rho: float | None = None
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "delta", complex(self.delta))
        problems = self.problems()
        if problems:
            raise InvalidParameters("; ".join(problems))

    def problems(self) -> list[str]:
        out = []
        if self.id not in (1, 2, 3, 4, 5):
            return [f"theorem id must be 1..5, got {self.id}"]
        if not 0.0 < self.mu <= 1.0:
            out.append(f"mu must lie in (0, 1], got {self.mu}")
        if self.beta < 0 or self.gamma < 0:
            out.append("beta and gamma must be nonnegative")
        if not self.beta + self.gamma > 0:
            out.append("beta + gamma must be positive")
        if self.n < 1:
            out.append("n must be a positive integer")
        if self.id == 2:
            if not 0.0 <= self.alpha < 1.0:
                out.append(f"alpha must lie in [0, 1), got {self.alpha}")
        elif self.alpha != 0.0:
            out.append("alpha is only meaningful for theorem 2")
        half = self.mu * self.n / 2.0
        if self.id in (1, 4) and not self.delta.real > -half:
            out.append(f"Re(delta) must exceed -mu n/2 = {-half}")
        if self.id == 2 and not self.delta.real > -half - self.alpha:
            out.append(f"Re(delta) must exceed -mu n/2 - alpha = {-half - self.alpha}")
        if self.id in MODULUS_IDS:
            if self.delta.imag != 0.0 or not self.delta.real > 0.0:
                out.append("delta must be a positive real number")
            elif self.rho is None:
                out.append("rho is required")
            elif not self.rho > rho_floor(self.delta.real, self.mu, self.n):
                out.append(
                    f"rho must exceed sqrt(delta/(delta + mu n)) = "
                    f"{rho_floor(self.delta.real, self.mu, self.n)}"
                )
        elif self.rho is not None:
            out.append("rho is only meaningful for theorems 3 and 5")
        return out

    @property
    def direction(self) -> Direction:
        return Direction.FORWARD if self.id in FORWARD_IDS else Direction.RECIPROCAL

    @property
    def strict(self) -> bool:
        return self.id != 2

    @property
    def concl_bound(self) -> float:
        return self.rho if self.id in MODULUS_IDS else 1.0


def power(base, e: float):
    """``base**e`` with ``x**0 = 1``; NaN for a negative base and non-integer ``e``."""
    b = np.asarray(base, dtype=float)
    if e == 0:
        out = np.ones_like(b)
    else:
        with np.errstate(invalid="ignore"):
            if float(e).is_integer():
                out = b**e
            else:
                out = np.where(b >= 0, np.abs(b) ** e, np.nan)
    return out if out.ndim else float(out)


def rho_floor(delta: float, mu: float, n: int) -> float:
    return math.sqrt(delta / (delta + mu * n))


def rhs_bound(tp: TheoremParams) -> float:
    half = tp.mu * tp.n / 2.0
    if tp.id in (1, 4):
        return power(tp.delta.real + half, tp.gamma)
    if tp.id == 2:
        return power(tp.delta.real + tp.alpha + half, tp.gamma)
    rho = tp.rho
    return power(rho, tp.beta) * power(tp.delta.real + tp.mu * rho * tp.n / (1.0 + rho), tp.gamma)


@dataclass(frozen=True)
class DiskGrid:
    """Points ``r e^{2 pi i j / angles}`` for every radius in ``radii``."""

    radii: tuple[float, ...]
    angles: int = 512
    r_max: float = R_MAX

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        if not self.radii:
            raise GridEmpty("grid needs at least one radius")
        if self.angles < 64:
            raise ValueError("grid needs at least 64 angles")
        if not self.r_max <= R_MAX:
            raise ValueError(f"r_max must not exceed {R_MAX}")
        r = np.asarray(self.radii)
        if np.any(np.diff(r) <= 0) or r[0] <= 0 or r[-1] > self.r_max:
            raise ValueError("radii must increase within (0, r_max]")

    @classmethod
    def geometric(cls, n_radii: int = 64, angles: int = 512, r_max: float = R_MAX,
                  r_min: float = 0.05) -> DiskGrid:
        """Radii with ``1 - r`` geometric from ``1 - r_min`` down to ``1 - r_max``."""
        if n_radii < 1:
            raise GridEmpty("grid needs at least one radius")
        if n_radii == 1:
            return cls((r_max,), angles, r_max)
        gaps = np.geomspace(1.0 - r_min, 1.0 - r_max, n_radii)
        radii = 1.0 - gaps
        radii[-1] = r_max
        return cls(tuple(radii), angles, r_max)

    def points(self) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(self.angles) / self.angles
        return (np.asarray(self.radii)[:, None] * np.exp(1j * theta)[None, :]).ravel()


def default_grid() -> DiskGrid:
    return DiskGrid.geometric(64, 512, R_MAX)


def _c(z) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


@dataclass
class Verdict:
    theorem: int
    hyp_sup: float
    hyp_bound: float
    hyp_holds: bool
    hyp_undefined: list
    concl_sup: float
    concl_bound: float
    concl_holds: bool
    consistent: bool
    witness_hyp: complex
    witness_concl: complex
    reliability: float
    reliable: bool
    n: int
    w_vanish: int
    points: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness_hyp"] = _c(self.witness_hyp)
        d["witness_concl"] = _c(self.witness_concl)
        d["hyp_undefined"] = [_c(z) for z in self.hyp_undefined]
        return d


@dataclass
class _Evaluator:
    """Series needed for one (theorem, pair) combination, built once."""

    tp: TheoremParams
    pair: FunctionPair
    w: AnalyticSeries = field(init=False)
    inner: AnalyticSeries = field(init=False)
    fprime: AnalyticSeries = field(init=False)
    g_over_z: AnalyticSeries = field(init=False)

    def __post_init__(self):
        tp, p = self.tp, self.pair
        self.w = w_series(p, tp.mu, tp.direction)
        if tp.id == 2:
            self.inner = convexity_term(p.f.series)
        else:
            self.inner = logderiv_combo(p, tp.direction)
        self.fprime = derivative(p.f.series)
        self.g_over_z = div(p.g.series, identity(p.g.order))

    def w_values(self, z):
        ev = evaluate(self.w, z)
        return ev.value, ev.tail_bound

    def lhs(self, z):
        """LHS values (NaN where undefined), tail bounds, undefined mask."""
        tp = self.tp
        wv, wt = self.w_values(z)
        ev = evaluate(self.inner, z)
        arg = tp.delta + ev.value
        if tp.id in MODULUS_IDS:
            second = power(np.abs(arg), tp.gamma)
        else:
            second = power(np.real(arg), tp.gamma)
        vals = power(np.abs(wv), tp.beta) * second
        undefined = (
            np.isnan(vals)
            | (np.abs(evaluate(self.fprime, z).value) < ZERO_VALUE_TOL)
            | (np.abs(evaluate(self.g_over_z, z).value) < ZERO_VALUE_TOL)
        )
        vals = np.where(undefined, np.nan, vals)
        return vals, np.maximum(wt, ev.tail_bound), undefined


def _require_pair(tp: TheoremParams, p: FunctionPair):
    if tp.n > p.n:
        raise InvalidParameters(
            f"theorem index n = {tp.n} exceeds min(n1, n2) = {p.n} of the pair"
        )


def lhs_at(tp: TheoremParams, p: FunctionPair, z: complex,
           threshold: float = RELIABILITY_THRESHOLD):
    """Theorem LHS at one point, or ``UNDEFINED``."""
    if abs(z) > R_MAX:
        raise ValueError(f"|z| must not exceed {R_MAX}")
    _require_pair(tp, p)
    vals, tails, undefined = _Evaluator(tp, p).lhs(np.asarray([z]))
    if tails[0] > threshold:
        raise EvaluationUnreliable(f"tail bound {tails[0]:.3g} at z = {z}")
    return UNDEFINED if undefined[0] else float(vals[0])


def _circle_maximizers(w: AnalyticSeries, grid: DiskGrid) -> np.ndarray:
    if w.is_zero():
        return np.empty(0, complex)
    z0, _, _, degenerate = max_on_circles(w, grid.radii, grid.angles)
    return z0[~degenerate]


def interior_zeros(s: AnalyticSeries, grid: DiskGrid,
                   threshold: float = RELIABILITY_THRESHOLD) -> tuple[np.ndarray, np.ndarray]:
    """Zeros of ``s`` inside the grid, with the tail bound that certifies them.

    The count comes from the winding number of ``s`` on the largest grid
    circle where the tail is below ``threshold`` and below half of
    ``min |s|`` (Rouche: the truncation has the same number of zeros there).
    Locations are the smallest-modulus roots of the truncated polynomial.
    """
    pts = grid.points()
    ev = evaluate(s, pts)
    vals = ev.value.reshape(len(grid.radii), grid.angles)
    tails = ev.tail_bound.reshape(vals.shape).max(axis=1)
    floor = np.abs(vals).min(axis=1)
    ok = np.flatnonzero((tails <= threshold) & (tails < 0.5 * floor))
    if ok.size == 0:
        return np.empty(0, complex), np.empty(0)
    i = ok[-1]
    ring = np.append(vals[i], vals[i, 0])
    count = int(round(np.sum(np.angle(ring[1:] / ring[:-1])) / (2 * np.pi)))
    if count <= 0:
        return np.empty(0, complex), np.empty(0)
    c = s.coeffs[: np.flatnonzero(s.coeffs)[-1] + 1]
    roots = np.roots(c[::-1])
    roots = roots[np.argsort(np.abs(roots))][:count]
    roots = roots[np.abs(roots) < grid.radii[i]]
    return roots.astype(complex), np.full(roots.size, float(tails[i]))


def check(
    tp: TheoremParams,
    p: FunctionPair,
    grid: DiskGrid | None = None,
    threshold: float = RELIABILITY_THRESHOLD,
) -> Verdict:
    grid = grid or default_grid()
    _require_pair(tp, p)
    ev = _Evaluator(tp, p)
    if ev.w.vanish < tp.n:
        log.warning("w vanishes to order %d < n = %d", ev.w.vanish, tp.n)
    elif ev.w.vanish > tp.n and not ev.w.is_zero():
        log.info("w vanishes to order %d > n = %d", ev.w.vanish, tp.n)
    z = np.concatenate([grid.points(), _circle_maximizers(ev.w, grid)])
    if z.size == 0:
        raise GridEmpty("no sample points")

    vals, tails, undefined = ev.lhs(z)
    wv, wtails = ev.w_values(z)
    zeros, ztails = [], []
    for s in (ev.fprime, ev.g_over_z):
        zz, zt = interior_zeros(s, grid, threshold)
        zeros.append(zz)
        ztails.append(zt)
    zeros, ztails = np.concatenate(zeros), np.concatenate(ztails)
    if zeros.size:
        z = np.concatenate([z, zeros])
        vals = np.concatenate([vals, np.full(zeros.size, np.nan)])
        tails = np.concatenate([tails, ztails])
        undefined = np.concatenate([undefined, np.ones(zeros.size, bool)])
        zw, zwt = ev.w_values(zeros)
        wv, wtails = np.concatenate([wv, zw]), np.concatenate([wtails, zwt])
    wmod = np.abs(wv)
    bound = rhs_bound(tp)

    # A hypothesis refuted at a point whose tail is within threshold is
    # settled whatever happens at untrusted points; restrict to those then.
    trusted = tails <= threshold
    with np.errstate(invalid="ignore"):
        fails = undefined | ~(vals < bound if tp.strict else vals <= bound)
    keep = np.ones(z.size, bool)
    wkeep = keep
    if (fails & trusted).any() and not trusted.all():
        keep = trusted
        wkeep = wtails <= threshold
    defined = ~undefined & keep
    if defined.any():
        i = int(np.nanargmax(np.where(defined, vals, -np.inf)))
        hyp_sup, witness_hyp = float(vals[i]), complex(z[i])
    else:
        hyp_sup, witness_hyp = float("nan"), complex(z[0])
    if undefined.any() and not (fails & trusted & ~undefined).any():
        witness_hyp = complex(z[np.flatnonzero(undefined & keep)[0]])
    below = hyp_sup < bound if tp.strict else hyp_sup <= bound
    hyp_holds = bool(not undefined.any() and below)

    if wkeep.any():
        j = int(np.argmax(np.where(wkeep, wmod, -np.inf)))
        concl_sup = float(wmod[j])
    else:
        j, concl_sup = 0, float("nan")
    concl_holds = concl_sup < tp.concl_bound
    reliability = float(max(np.max(tails[keep]), np.max(wtails[wkeep], initial=0.0)))
    return Verdict(
        theorem=tp.id,
        hyp_sup=hyp_sup,
        hyp_bound=float(bound),
        hyp_holds=hyp_holds,
        hyp_undefined=[complex(x) for x in z[undefined]],
        concl_sup=concl_sup,
        concl_bound=float(tp.concl_bound),
        concl_holds=bool(concl_holds),
        consistent=bool(not hyp_holds or concl_holds),
        witness_hyp=witness_hyp,
        witness_concl=complex(z[j]),
        reliability=reliability,
        reliable=bool(reliability <= threshold),
        n=tp.n,
        w_vanish=ev.w.vanish,
        points=int(z.size),
    )


def _margin(values, tails, threshold):
    worst = float(np.max(tails))
    if worst > threshold:
        raise EvaluationUnreliable(f"tail bound {worst:.3g} exceeds {threshold:.3g}")
    return float(np.min(values))


def starlike_margin(
    g: NormalizedFunction,
    alpha: float,
    grid: DiskGrid | None = None,
    threshold: float = RELIABILITY_THRESHOLD,
) -> float:
    """``min Re(z g'/g) - alpha`` over the grid; positive certifies order alpha there."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    grid = grid or default_grid()
    ev = evaluate(log_derivative(g.series), grid.points())
    return _margin(np.real(ev.value) - alpha, ev.tail_bound, threshold)


def stc_margin(
    p: FunctionPair,
    mu: float,
    grid: DiskGrid | None = None,
    threshold: float = RELIABILITY_THRESHOLD,
) -> float:
    """``min Re(1 + w)`` over the grid for the forward ``w``."""
    grid = grid or default_grid()
    ev = evaluate(w_series(p, mu, Direction.FORWARD), grid.points())
    return _margin(1.0 + np.real(ev.value), ev.tail_bound, threshold)
