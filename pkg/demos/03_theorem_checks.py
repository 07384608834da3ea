"""Checking the five sufficient conditions on concrete pairs."""

from stconvex import DiskGrid, FunctionPair, TheoremParams, check, rhs_bound, starlike_margin, stc_margin
from stconvex.catalog import build_function

grid = DiskGrid.geometric(32, 256)

# a pair built to satisfy |w| <= 0.6 |z|
g = build_function("koebe(0)")
f = build_function("synth(g=koebe(0), mu=0.8, w=cmono(0.6, 1))")
pair = FunctionPair(f, g)
print("stc margin:", stc_margin(pair, 0.8, grid))

for tp in (TheoremParams(1, 0.8, 1.0, 1.0, 0.5),
           TheoremParams(2, 0.8, 1.0, 1.0, 0.5, alpha=0.0),
           TheoremParams(3, 0.8, 1.0, 1.0, 1.0, rho=0.9)):
    v = check(tp, pair, grid)
    print(f"theorem {tp.id}: LHS sup {v.hyp_sup:.4f} vs bound {rhs_bound(tp):.4f}  "
          f"|w| sup {v.concl_sup:.4f} < {v.concl_bound}  consistent={v.consistent}")

# |w| reaches 1.2 r: the hypothesis has to fail somewhere
g = build_function("identity")
f = build_function("synth(g=identity, mu=1, w=cmono(1.2, 1))")
v = check(TheoremParams(1, 1.0, 1.0, 1.0, 0.5), FunctionPair(f, g), grid)
print("w = 1.2z: hyp holds?", v.hyp_holds, " undefined at", v.hyp_undefined)

# without a starlike g, Theorem 2 can fail
g = build_function("zexp(-5)")
f = build_function("synth(g=zexp(-5), mu=1, w=wpoly(0.54, 0.54))")
v = check(TheoremParams(2, 1.0, 2.45, 1.0, 0.35), FunctionPair(f, g), grid)
print("z exp(-5z): starlike margin", round(starlike_margin(g, 0.0, grid), 3),
      " hyp holds", v.hyp_holds, " concl holds", v.concl_holds)
