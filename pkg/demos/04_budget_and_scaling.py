#!/usr/bin/env python3
"""How the iteration budget behaves and why rescaling the data matters.

The zero-mass guarantee holds when the solver runs strictly fewer than
((z/lam)(beta-1) - 1) / ((1/m)^(beta-1) + (1/n)^(beta-1)) iterations.
Small tolerances or large lambda push that bound to zero (the solver
cannot start); huge tolerances push it into the thousands (wasted work).
Multiplying the cost matrix and z by one constant moves the bound
anywhere without changing which points count as outliers.
"""

import numpy as np

from betaot import (
    BudgetExhaustedError,
    InfeasibleToleranceError,
    SolverConfig,
    auto_scale,
    iteration_budget,
)

m = n = 1000
cfg = SolverConfig(beta=1.2, lam=2.0)

print(f"beta={cfg.beta}, lambda={cfg.lam}, m=n={m}")
print(f"feasibility bar: z must exceed lambda/(beta-1) = {cfg.lam / (cfg.beta - 1):.1f}")
print()

for z in (5.0, 10.0, 10.5, 25.0, 100.0, 1000.0, 10000.0):
    try:
        budget = iteration_budget(z, cfg, m, n)
        print(f"z={z:>8}: bound={budget.t_max_real:10.2f}  usable budget={budget.budget}")
    except InfeasibleToleranceError:
        print(f"z={z:>8}: infeasible (z below the bar)")
    except BudgetExhaustedError:
        print(f"z={z:>8}: bound positive but below 1; rescaling required")

print()
gamma = np.full((m, n), 3.0)
for z in (10.5, 10000.0):
    scale, _, z_scaled = auto_scale(gamma, z, cfg, (1, 19))
    budget = iteration_budget(z_scaled, cfg, m, n)
    print(f"auto_scale at z={z}: scale={scale:.4f} -> budget={budget.budget} (target 1..19)")
