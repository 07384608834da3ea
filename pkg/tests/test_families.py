import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stconvex.errors import SpecInvalid
from stconvex.families import (
    HerglotzAtoms,
    WKind,
    WSpec,
    koebe_alpha,
    random_atoms,
    random_starlike,
    realize_w,
    synth_from_w,
)
from stconvex.functionals import Direction, FunctionPair, w_series
from stconvex.jack import max_on_circle
from stconvex.series import evaluate
from stconvex.theorems import DiskGrid, starlike_margin

ORDER = 128


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75])
def test_koebe_against_binomial(alpha):
    g = koebe_alpha(alpha, 40)
    e = 2 * (1 - alpha)
    ref = [0.0] + [float(mpmath.binomial(k + e - 1, k)) for k in range(40)]
    assert np.allclose(g.series.coeffs.real, ref, rtol=1e-12)


def test_koebe_half_is_geometric():
    c = koebe_alpha(0.5, ORDER).series.coeffs
    assert np.max(np.abs(c[1:] - 1.0)) < 1e-12


def test_koebe_rejects_alpha():
    with pytest.raises(ValueError):
        koebe_alpha(1.0)


def test_atoms_validation():
    with pytest.raises(ValueError):
        HerglotzAtoms((0.5, 0.4), (0.0, 1.0))
    with pytest.raises(ValueError):
        HerglotzAtoms((1.0,), ())
    atoms = HerglotzAtoms((1.0,), (0.0,))
    assert np.allclose(atoms.moments(3), 1.0)


def test_single_atom_is_rotated_koebe():
    # one atom at phase t gives z/(1 - e^{it} z)^{2(1-alpha)}
    t = 0.7
    g = random_starlike(0.3, HerglotzAtoms((1.0,), (t,)), 40)
    ref = koebe_alpha(0.3, 40).series.coeffs * np.exp(1j * t * (np.arange(41) - 1))
    assert np.max(np.abs(g.series.coeffs[1:] - ref[1:])) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.0, 0.9), st.integers(1, 3))
def test_random_starlike_has_positive_margin(seed, alpha, n):
    rng = np.random.default_rng(seed)
    atoms = random_atoms(rng)
    assert len(atoms.weights) <= 8
    g = random_starlike(alpha, atoms, 256, n)
    grid = DiskGrid.geometric(8, 128, 0.9)
    # Re p > 0 on the disk, so Re(z g'/g) - alpha > 0
    assert starlike_margin(g, alpha, grid) > 0
    assert np.all(g.series.coeffs[2 : n + 1] == 0)


def test_random_atoms_respects_gap():
    rng = np.random.default_rng(3)
    for _ in range(50):
        phases = np.array(random_atoms(rng, 8).phases)
        gaps = np.diff(np.concatenate([phases, phases[:1] + 2 * np.pi]))
        assert gaps.min() >= 0.05


@pytest.mark.parametrize(
    "spec",
    [
        WSpec(WKind.SCALED_MONOMIAL, c=0.7j, m=2),
        WSpec(WKind.MOBIUS_MONOMIAL, c=0.8, m=1, a=0.4 - 0.2j),
        WSpec(WKind.EXP_MONOMIAL, c=0.9 + 0.3j, m=1),
    ],
)
@pytest.mark.parametrize("r", [0.3, 0.7, 0.95])
def test_sup_on_circle_closed_form(spec, r):
    w = realize_w(spec, 1, ORDER)
    _, wmax, _ = max_on_circle(w, r)
    assert wmax == pytest.approx(spec.sup_on_circle(r), rel=1e-9)


def test_realize_w_validation():
    with pytest.raises(SpecInvalid):
        realize_w(WSpec(WKind.SCALED_MONOMIAL, c=1.0, m=1), n=2)
    with pytest.raises(SpecInvalid):
        realize_w(WSpec(WKind.POLY, coeffs=(1.0, 0.5)))
    with pytest.raises(SpecInvalid):
        realize_w(WSpec(WKind.MOBIUS_MONOMIAL, c=1.0, m=1, a=1.0))
    assert WSpec(WKind.POLY, coeffs=(0, 0, 0.5)).sup_on_circle(0.5) is None


def test_mobius_pointwise():
    spec = WSpec(WKind.MOBIUS_MONOMIAL, c=0.5, m=2, a=0.3j)
    w = realize_w(spec, 1, ORDER)
    z = 0.4 - 0.3j
    ref = 0.5 * z**2 * (z + 0.3j) / (1 + (-0.3j) * z)
    assert abs(evaluate(w, z).value - ref) < 1e-13


@pytest.mark.parametrize("d", list(Direction))
def test_synth_round_trip_and_index(d):
    g = random_starlike(0.1, random_atoms(np.random.default_rng(5)), ORDER, 3)
    w = realize_w(WSpec(WKind.SCALED_MONOMIAL, c=0.5, m=2), 1, ORDER)
    f = synth_from_w(g, 0.6, w, d)
    assert f.n_index == 2
    back = w_series(FunctionPair(f, g), 0.6, d)
    assert np.max(np.abs(back.coeffs - w.coeffs[: back.order + 1])) < 1e-12


def test_synth_rejects():
    g = koebe_alpha(0.0, 16)
    w = realize_w(WSpec(WKind.SCALED_MONOMIAL, c=0.5, m=1), 1, 16)
    with pytest.raises(ValueError):
        synth_from_w(g, 1.5, w)
    with pytest.raises(SpecInvalid):
        synth_from_w(g, 0.5, w + 1.0)
