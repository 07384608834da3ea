"""Seeded randomized campaigns over the five theorems.

A sample draws a starlike ``g`` (Herglotz construction), a ``w`` that is
either bounded by 1 or deliberately not, parameters satisfying the theorem's
preconditions, synthesizes ``f`` from ``(g, mu, w)`` and checks the verdict.
The headline property is that no verdict has a holding hypothesis together
with a failing conclusion.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .families import (
    WKind,
    WSpec,
    random_atoms,
    random_starlike,
    realize_w,
    synth_from_w,
)
from .functionals import FunctionPair
from .theorems import DiskGrid, TheoremParams, check, rho_floor, starlike_margin, stc_margin

CAMPAIGN_ORDER = 256
CAMPAIGN_R_MAX = 0.9
MIN_STARLIKE_MARGIN = 0.01


def campaign_grid() -> DiskGrid:
    return DiskGrid.geometric(16, 128, CAMPAIGN_R_MAX)


def random_w_spec(rng: np.random.Generator, m: int, r_max: float) -> WSpec:
    """A ``w`` vanishing to order ``m`` with ``1 + w`` zero-free near the sampled disk.

    Roughly half the draws have circle maxima above 1 inside ``|z| <= r_max``.
    """
    kind = rng.choice(["cmono", "cmobius", "cexp", "wpoly"])
    phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
    if kind == "cmono":
        # 1 + c z^m has its zeros on |z| = |c|^(-1/m); keep them past 1.02
        c = rng.uniform(0.0, 1.0 / 1.02**m)
        return WSpec(WKind.SCALED_MONOMIAL, c=complex(c * phase), m=m)
    if kind == "cmobius":
        c = rng.uniform(0.0, 0.98)
        a = rng.uniform(0.0, 0.9) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        return WSpec(WKind.MOBIUS_MONOMIAL, c=complex(c * phase), m=m, a=complex(a))
    if kind == "cexp":
        # exp(c z^m) - 1 never hits -1; |c| up to 2 pushes max |w| past 1
        c = rng.uniform(0.0, 2.0) / r_max**m
        return WSpec(WKind.EXP_MONOMIAL, c=complex(c * phase), m=m)
    deg = int(rng.integers(m, m + 4))
    coeffs = np.zeros(deg + 1, complex)
    raw = rng.normal(size=deg + 1 - m) + 1j * rng.normal(size=deg + 1 - m)
    # sum |coeffs| < 1 keeps |w| < 1 on the closed disk
    coeffs[m:] = raw / np.abs(raw).sum() * rng.uniform(0.0, 0.98)
    return WSpec(WKind.POLY, coeffs=tuple(complex(x) for x in coeffs))


def random_params(rng: np.random.Generator, theorem: int, n: int) -> TheoremParams:
    mu = float(rng.choice([0.25, 0.5, 0.8, 1.0, rng.uniform(0.05, 1.0)]))
    shape = rng.integers(0, 4)
    if shape == 0:
        beta, gamma = 0.0, float(rng.uniform(0.1, 3.0))
    elif shape == 1:
        beta, gamma = float(rng.uniform(0.1, 3.0)), 0.0
    elif shape == 2:
        beta, gamma = float(rng.uniform(0.0, 3.0)), float(rng.integers(1, 4))
    else:
        beta, gamma = float(rng.uniform(0.0, 3.0)), float(rng.uniform(0.05, 3.0))
    if beta + gamma == 0.0:
        gamma = 1.0
    half = mu * n / 2.0
    if theorem in (3, 5):
        delta = float(rng.uniform(0.01, 2.0))
        lo = rho_floor(delta, mu, n)
        rho = float(lo + rng.uniform(1e-3, 1.5 - lo)) if lo < 1.5 else lo + 0.1
        return TheoremParams(theorem, mu, beta, gamma, delta, n=n, rho=rho)
    alpha = float(rng.uniform(0.0, 0.8)) if theorem == 2 else 0.0
    re = -half - alpha + float(rng.uniform(1e-3, 2.5))
    im = float(rng.normal()) if rng.uniform() < 0.5 else 0.0
    return TheoremParams(theorem, mu, beta, gamma, complex(re, im), n=n, alpha=alpha)


@dataclass
class Sample:
    seed: int
    params: TheoremParams
    w_spec: WSpec
    n_g: int
    verdict: object
    stc: float | None = None


@dataclass
class CampaignSummary:
    theorem: int
    seed: int
    samples: list = field(default_factory=list)
    rejected_g: int = 0

    @property
    def counts(self) -> Counter:
        c = Counter()
        for s in self.samples:
            v = s.verdict
            c["total"] += 1
            c["hyp_holds"] += v.hyp_holds
            c["concl_holds"] += v.concl_holds
            c["inconsistent"] += not v.consistent
            c["undefined_leak"] += v.hyp_holds and bool(v.hyp_undefined)
            c["unreliable"] += not v.reliable
            c["with_undefined"] += bool(v.hyp_undefined)
        return c


def draw_sample(theorem: int, seed: int, grid: DiskGrid | None = None,
                order: int = CAMPAIGN_ORDER) -> tuple[Sample, int]:
    """One seeded sample; also returns how many ``g`` were rejected for low margin."""
    grid = grid or campaign_grid()
    rng = np.random.default_rng(seed)
    rejected = 0
    while True:
        n_g = int(rng.integers(1, 4))
        alpha_g = float(rng.uniform(0.0, 0.9))
        g = random_starlike(alpha_g, random_atoms(rng), order, n_g)
        m = int(rng.integers(1, 4))
        n = min(n_g, m)
        params = random_params(rng, theorem, n)
        margin = starlike_margin(g, params.alpha, grid)
        if margin > MIN_STARLIKE_MARGIN:
            break
        rejected += 1
    spec = random_w_spec(rng, m, grid.r_max)
    w = realize_w(spec, n, order)
    f = synth_from_w(g, params.mu, w, params.direction)
    pair = FunctionPair(f, g)
    verdict = check(params, pair, grid)
    stc = None
    if verdict.concl_holds and verdict.concl_bound <= 1.0:
        stc = stc_margin(pair, params.mu, grid, threshold=np.inf)
    return Sample(seed, params, spec, n_g, verdict, stc), rejected


def run_campaign(theorem: int, count: int, seed: int = 0,
                 grid: DiskGrid | None = None, order: int = CAMPAIGN_ORDER) -> CampaignSummary:
    """``count`` samples with per-sample seeds derived from ``seed``."""
    grid = grid or campaign_grid()
    seeds = np.random.SeedSequence(seed).generate_state(count)
    summary = CampaignSummary(theorem, seed)
    for s in seeds:
        sample, rejected = draw_sample(theorem, int(s), grid, order)
        summary.samples.append(sample)
        summary.rejected_g += rejected
    return summary
