"""Exact discrete transport on small instances, for validating the solvers.

Square instances with uniform marginals reduce to the assignment problem
(an optimal vertex of the scaled Birkhoff polytope is 1/n times a
permutation matrix); rectangular ones are solved as an explicit LP over
the transport polytope.  A brute-force permutation enumeration is kept as
an independent cross-check for tiny instances and deliberately shares no
code with the assignment path.
"""

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment, linprog

from .errors import SizeError

MAX_CELLS = 10**6
BRUTE_FORCE_MAX = 7


@dataclass
class ExactSolution:
    """Optimal value and a witnessing plan in the coupling polytope."""

    value: float
    plan: np.ndarray


def exact_ot(cost) -> ExactSolution:
    """Exact minimum-cost coupling with uniform marginals 1/m, 1/n.

    Square instances go through the Hungarian-style assignment solver;
    rectangular ones through an LP (HiGHS) over the transport polytope.
    This is a test oracle: instances beyond ``MAX_CELLS`` cells are
    rejected.
    """
    gamma = np.asarray(cost, dtype=float)
    if gamma.ndim != 2 or gamma.size == 0:
        raise ValueError("cost must be a nonempty 2-D matrix")
    m, n = gamma.shape
    if m * n > MAX_CELLS:
        raise SizeError(f"instance with {m * n} cells exceeds the oracle cap {MAX_CELLS}")
    if m == n:
        rows, cols = linear_sum_assignment(gamma)
        plan = np.zeros_like(gamma)
        plan[rows, cols] = 1.0 / n
        value = float(gamma[rows, cols].sum() / n)
        return ExactSolution(value=value, plan=plan)
    return _exact_ot_lp(gamma)


def _exact_ot_lp(gamma: np.ndarray) -> ExactSolution:
    m, n = gamma.shape
    # Row-sum and column-sum equality constraints on the flattened plan.
    a_eq = np.zeros((m + n, m * n))
    for i in range(m):
        a_eq[i, i * n : (i + 1) * n] = 1.0
    for j in range(n):
        a_eq[m + j, j::n] = 1.0
    b_eq = np.concatenate([np.full(m, 1.0 / m), np.full(n, 1.0 / n)])
    res = linprog(gamma.ravel(), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        raise RuntimeError(f"transport LP failed: {res.message}")
    plan = res.x.reshape(m, n)
    return ExactSolution(value=float(res.fun), plan=plan)


def exact_ot_bruteforce(cost) -> ExactSolution:
    """Enumerate all permutations of a square instance (n <= 7).

    Independent of the assignment path on purpose.  Ties are broken by the
    lexicographically smallest permutation (the enumeration order with
    strict improvement keeps the first optimum).
    """
    gamma = np.asarray(cost, dtype=float)
    if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1]:
        raise ValueError("brute force requires a square cost matrix")
    n = gamma.shape[0]
    if n > BRUTE_FORCE_MAX:
        raise SizeError(f"brute force capped at n={BRUTE_FORCE_MAX}, got {n}")
    idx = np.arange(n)
    best_perm = None
    best_sum = np.inf
    for perm in itertools.permutations(range(n)):
        total = gamma[idx, perm].sum()
        if total < best_sum:
            best_sum = total
            best_perm = perm
    plan = np.zeros_like(gamma)
    plan[idx, best_perm] = 1.0 / n
    value = float(gamma[idx, best_perm].sum() / n)
    return ExactSolution(value=value, plan=plan)
