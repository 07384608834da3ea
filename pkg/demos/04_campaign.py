"""A small randomized implication campaign for every theorem."""

from stconvex.campaign import run_campaign

for theorem in (1, 2, 3, 4, 5):
    summary = run_campaign(theorem, 100, seed=theorem)
    c = summary.counts
    print(f"theorem {theorem}: {c['total']} samples, hypothesis held in {c['hyp_holds']}, "
          f"conclusion failed in {c['total'] - c['concl_holds']}, inconsistent {c['inconsistent']}, "
          f"rejected g {summary.rejected_g}")
