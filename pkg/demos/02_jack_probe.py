"""Where |w| peaks on a circle, z w'/w is real and at least the vanishing order."""

import numpy as np

from stconvex import jack_verify
from stconvex.series import from_coeffs

rng = np.random.default_rng(7)
coeffs = np.zeros(65, complex)
coeffs[2:7] = rng.normal(size=5) + 1j * rng.normal(size=5)
w = from_coeffs(coeffs)
print("w vanishes to order", w.vanish)

for rep in jack_verify(w, [0.2, 0.5, 0.8, 0.95]):
    print(f"r={rep.r:.2f}  z0={rep.z0:.4f}  |w(z0)|={rep.wmax:.5f}  "
          f"k={rep.k_est:.6f}  |Im|={rep.imag_residual:.1e}  k>=n: {rep.order_ok}")

# a monomial has constant modulus on every circle; the probe flags it
flat = jack_verify(from_coeffs([0, 0, 0, 0.5], order=32), [0.6])[0]
print("monomial: flat =", flat.flat, " k =", flat.k_est)
