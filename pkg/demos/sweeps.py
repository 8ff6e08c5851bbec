"""Worst ratios found by sweeping random and adversarial instances.

Each mode pairs a welfare ratio with the bound it should never exceed.
Larger sample counts sharpen the estimates; see ``oflp experiment`` for
CSV output.

    python demos/sweeps.py
"""
from oflp.analysis import MODES, SweepConfig, max_ratio, sweep, theorem_bound

for mode in MODES:
    records = sweep(SweepConfig(mode, n_min=2, n_max=8, samples=300, seed=1))
    top = max_ratio(records)
    bound = theorem_bound(mode, top.n)
    print(f"{mode:<13} worst {float(top.ratio):.6f} ({top.family}, n={top.n})  bound {float(bound):.6f}")
