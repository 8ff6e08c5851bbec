"""Strategic agents facing the fair utilitarian mechanism.

Truthful reports are rarely stable: agents shade their reports to push the
facility away.  An eps-Nash equilibrium always exists, and its welfare loss
is bounded when eps is small.

    python demos/equilibria.py
"""
from fractions import Fraction

from oflp.strategic import MechId, construct_equilibrium, poa_family, poa_ratio, verify_equilibrium

m = MechId.OptUwIfs2
eps = Fraction(1, 100)

truth = [Fraction(1, 4) - Fraction(1, 1000), Fraction(3, 4) + Fraction(1, 1000)]
rep = verify_equilibrium(m, truth, truth, Fraction(1, 10**6), grid=501)
print(f"truthful {[str(x) for x in truth]}: equilibrium? {rep.is_equilibrium}, gains {[float(g) for g in rep.per_agent_gain]}")

for truth in (["0.3", "0.6"], ["0.1", "0.1", "0.9", "0.9"], ["0.05", "0.4", "0.45", "0.7", "0.95"]):
    reports = construct_equilibrium(m, truth, eps)
    rep = verify_equilibrium(m, truth, reports, eps, grid=501)
    print(f"truth {truth}")
    print(f"  reports {[str(r) for r in reports]}")
    print(f"  verified {rep.is_equilibrium}, max gain {float(rep.max_gain):.2e}, "
          f"ratio {float(poa_ratio(m, truth, reports)):.4f}")

for n in (2, 3, 5):
    truth, reports, ratio = poa_family(n, Fraction(1, 10 * n))
    print(f"bad equilibrium, n={n}: ratio {ratio} = {float(ratio):.3f}")
