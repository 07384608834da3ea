"""Power series, the ratio power w, and the logarithmic-derivative identity."""

import numpy as np

from stconvex import FunctionPair, koebe_alpha, realize_w, synth_from_w, w_series, identity_residual
from stconvex.families import WKind, WSpec
from stconvex.functionals import Direction
from stconvex.series import evaluate

# Koebe function z/(1-z)^2 at truncation order 128
g = koebe_alpha(0.0, 128)
print("Koebe coefficients:", g.series.coeffs[:6].real)

# pick w(z) = 0.6 z and build f with z f' = g (1 + w)^mu
mu = 0.8
w = realize_w(WSpec(WKind.SCALED_MONOMIAL, c=0.6, m=1))
f = synth_from_w(g, mu, w)
pair = FunctionPair(f, g)
print("f coefficients:", np.round(f.series.coeffs[:5].real, 6))

# w recovered from the pair matches the input
back = w_series(pair, mu, Direction.FORWARD)
print("max |w_back - w| =", np.abs(back.coeffs - w.coeffs[: back.order + 1]).max())

# 1 + z f''/f' - z g'/g equals mu z w'/(w + 1), coefficient by coefficient
res = identity_residual(pair, mu, Direction.FORWARD)
print("identity residual =", np.abs(res.coeffs).max())

# pointwise values come with a tail estimate
for z in (0.5, 0.9, 0.99):
    ev = evaluate(back, z)
    print(f"w({z}) = {ev.value:.12f}  tail <= {ev.tail_bound:.2e}")
