"""End-to-end transport solvers and the robustness iteration budget.

Three solvers share the dual-coordinate machinery:

- :func:`robust_solve` runs the truncated single-Newton-step alternating
  scaling loop for the beta potential.  Run for at most
  :func:`iteration_budget` iterations it provably sends zero mass to any
  column whose costs all exceed the tolerance ``z``.
- :func:`sinkhorn_solve` is the classical kernel-space scaling method for
  the Shannon entropy (with an explicit log-space variant).
- :func:`nasa_solve` is the generic alternating-projection loop with inner
  Newton iterations run to convergence; it requires a cofinite generator
  (Shannon or squared Euclidean) and exists as the reference the truncated
  beta loop deviates from.

All solvers return a :class:`TransportPlan` carrying the plan, its cost
value, L1 marginal residuals, and the iteration count.  Solves own their
dual state exclusively; concurrent solves share nothing.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetExhaustedError,
    DimensionMismatchError,
    InfeasibleToleranceError,
    NumericalUnderflowError,
    UnsupportedGeneratorError,
)
from .potentials import Potential, beta_potential, psi_pair, psi_prime
from .projections import (
    EPS_DENOMINATOR,
    apply_col,
    apply_row,
    clamp_dual,
    col_newton_decrement,
    row_newton_decrement,
    truncate_col_decrement,
    truncate_row_decrement,
)

NASA_INNER_TOL = 1e-12
NASA_INNER_CAP = 100


@dataclass
class SolverConfig:
    """Hyperparameters for the robust solver.

    ``iterations`` may be given explicitly; otherwise it is derived from
    the outlier tolerance ``z`` through :func:`iteration_budget` (in which
    case the zero-mass guarantee applies).
    """

    beta: float = 1.2
    lam: float = 2.0
    iterations: int | None = None
    z: float | None = None
    sinkhorn_tol: float = 1e-9
    max_iter: int = 10000
    eps_zero: float = 1e-12


@dataclass
class TransportPlan:
    """A computed plan with diagnostics.

    ``value`` is the Frobenius inner product of the plan with the cost
    matrix; ``row_residual_l1`` / ``col_residual_l1`` are L1 distances of
    the marginals from the uniform targets 1/m and 1/n.
    """

    pi: np.ndarray
    value: float
    row_residual_l1: float
    col_residual_l1: float
    iterations_run: int
    converged: bool | None = None


@dataclass
class IterationBudget:
    """Largest admissible iteration count for the zero-mass guarantee.

    ``budget`` is the largest integer STRICTLY below ``t_max_real``; an
    exact-integer bound decrements by one to preserve strictness.
    """

    t_max_real: float
    budget: int


def _validate_cost(cost) -> np.ndarray:
    gamma = np.asarray(cost, dtype=float)
    if gamma.ndim != 2 or gamma.size == 0:
        raise DimensionMismatchError("cost must be a nonempty 2-D matrix")
    if not np.all(np.isfinite(gamma)):
        raise ValueError("cost matrix must be finite (no NaN/Inf)")
    return gamma


def init_dual(cost, lam: float) -> np.ndarray:
    """Dual image of the unconstrained regularized optimum: ``-cost / lam``."""
    if not lam > 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    gamma = _validate_cost(cost)
    return -gamma / lam


def iteration_budget(z: float, cfg: SolverConfig, m: int, n: int) -> IterationBudget:
    """Iteration cap under which no mass reaches columns costing >= z everywhere.

    The bound is ``t_max_real = ((z/lam)(beta-1) - 1) / ((1/m)^(beta-1) +
    (1/n)^(beta-1))`` and the usable budget is the largest integer strictly
    below it.

    Raises
    ------
    InfeasibleToleranceError
        If ``z <= lam / (beta - 1)``, where the bound is nonpositive.
    BudgetExhaustedError
        If the budget is below 1; rescale the problem (see
        ``costs.auto_scale``).
    """
    beta, lam = cfg.beta, cfg.lam
    if z <= lam / (beta - 1.0):
        raise InfeasibleToleranceError(
            f"tolerance z={z} must exceed lambda/(beta-1)={lam / (beta - 1.0)}"
        )
    decrement_sum = (1.0 / m) ** (beta - 1.0) + (1.0 / n) ** (beta - 1.0)
    t_max_real = ((z / lam) * (beta - 1.0) - 1.0) / decrement_sum
    budget = math.ceil(t_max_real) - 1
    if budget < 1:
        raise BudgetExhaustedError(
            f"iteration budget {budget} < 1 for z={z}; rescale the cost and z "
            "(see auto_scale) or increase z"
        )
    return IterationBudget(t_max_real=t_max_real, budget=budget)


def _resolve_iterations(cfg: SolverConfig, m: int, n: int) -> int:
    if cfg.iterations is not None:
        if cfg.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {cfg.iterations}")
        return int(cfg.iterations)
    if cfg.z is not None:
        return iteration_budget(cfg.z, cfg, m, n).budget
    raise ValueError("SolverConfig needs either iterations or z")


def robust_solve(cost, cfg: SolverConfig) -> TransportPlan:
    """Truncated alternating scaling for the beta potential.

    Initializes the dual at ``-cost/lam``, clamps, then runs exactly T
    full iterations of (row Newton step, truncation, update, clamp,
    column Newton step, truncation, update, clamp) and maps the clamped
    dual back to the primal plan.  Deterministic for fixed inputs.

    The output is an intermediate iterate on purpose: it is generally
    infeasible (nonzero marginal residuals) but, within the iteration
    budget for a tolerance z, provably transports no mass to columns
    whose costs all reach z.
    """
    gamma = _validate_cost(cost)
    m, n = gamma.shape
    pot = beta_potential(cfg.beta)
    iterations = _resolve_iterations(cfg, m, n)

    theta_tilde = init_dual(gamma, cfg.lam)
    theta_star = clamp_dual(theta_tilde, pot)
    for _ in range(iterations):
        tau = row_newton_decrement(theta_star, pot, m)
        tau = truncate_row_decrement(tau, theta_star, pot, m)
        theta_tilde = apply_row(theta_tilde, tau)
        theta_star = clamp_dual(theta_tilde, pot)

        sigma = col_newton_decrement(theta_star, pot, n)
        sigma = truncate_col_decrement(sigma, theta_star, pot, n)
        theta_tilde = apply_col(theta_tilde, sigma)
        theta_star = clamp_dual(theta_tilde, pot)

    pi = psi_prime(theta_star, pot)
    row_res, col_res = marginal_residuals(pi, m, n)
    return TransportPlan(
        pi=pi,
        value=transport_value(pi, gamma),
        row_residual_l1=row_res,
        col_residual_l1=col_res,
        iterations_run=iterations,
    )


def _plan_residuals(pi: np.ndarray) -> tuple[float, float]:
    return marginal_residuals(pi, pi.shape[0], pi.shape[1])


def sinkhorn_solve(
    cost,
    lam: float,
    tol: float = 1e-9,
    max_iter: int = 10000,
    log_space: bool = False,
) -> TransportPlan:
    """Classical scaling iterations on the kernel ``exp(-cost/lam)``.

    Uniform marginals 1/m and 1/n.  Stops when the summed row+column L1
    residual drops to ``tol`` or after ``max_iter`` iterations; residuals
    are reported either way.

    Works in kernel space by default.  If the kernel underflows to an
    all-zero row or column (or scaling factors degenerate), raises
    :class:`NumericalUnderflowError`; rerun with a larger ``lam``, a
    rescaled cost, or ``log_space=True``, which evaluates the updates with
    log-sum-exp and cannot underflow for finite costs.
    """
    gamma = _validate_cost(cost)
    if not lam > 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if log_space:
        return _sinkhorn_log(gamma, lam, tol, max_iter)

    m, n = gamma.shape
    kernel = np.exp(-gamma / lam)
    if np.any(kernel.sum(axis=1) == 0.0) or np.any(kernel.sum(axis=0) == 0.0):
        raise NumericalUnderflowError(
            "kernel exp(-cost/lam) underflowed to an all-zero row/column; "
            "increase lam, rescale the cost, or pass log_space=True"
        )
    r = 1.0 / m
    c = 1.0 / n
    v = np.ones(n)
    u = np.ones(m)
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        u = r / (kernel @ v)
        v = c / (kernel.T @ u)
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise NumericalUnderflowError(
                "scaling factors overflowed/underflowed; increase lam, "
                "rescale the cost, or pass log_space=True"
            )
        pi = u[:, None] * kernel * v[None, :]
        row_res, col_res = _plan_residuals(pi)
        if row_res + col_res <= tol:
            converged = True
            break
    pi = u[:, None] * kernel * v[None, :]
    row_res, col_res = _plan_residuals(pi)
    return TransportPlan(
        pi=pi,
        value=transport_value(pi, gamma),
        row_residual_l1=row_res,
        col_residual_l1=col_res,
        iterations_run=iterations,
        converged=converged,
    )


def _sinkhorn_log(gamma: np.ndarray, lam: float, tol: float, max_iter: int):
    """Log-domain scaling: potentials f, g with pi = exp((f + g - cost)/lam)."""
    from scipy.special import logsumexp

    m, n = gamma.shape
    log_r = -math.log(m)
    log_c = -math.log(n)
    f = np.zeros(m)
    g = np.zeros(n)
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        f = lam * (log_r - logsumexp((g[None, :] - gamma) / lam, axis=1))
        g = lam * (log_c - logsumexp((f[:, None] - gamma) / lam, axis=0))
        pi = np.exp((f[:, None] + g[None, :] - gamma) / lam)
        row_res, col_res = _plan_residuals(pi)
        if row_res + col_res <= tol:
            converged = True
            break
    pi = np.exp((f[:, None] + g[None, :] - gamma) / lam)
    row_res, col_res = _plan_residuals(pi)
    return TransportPlan(
        pi=pi,
        value=transport_value(pi, gamma),
        row_residual_l1=row_res,
        col_residual_l1=col_res,
        iterations_run=iterations,
        converged=converged,
    )


def _inner_newton_rows(theta_star, pot, m):
    """Newton iterations to convergence for the row multipliers."""
    tau = np.zeros(theta_star.shape[0])
    for _ in range(NASA_INNER_CAP):
        shifted = theta_star - tau[:, None]
        ps, pss = psi_pair(shifted, pot)
        num = ps.sum(axis=1) - 1.0 / m
        den = pss.sum(axis=1)
        safe = den >= EPS_DENOMINATOR
        step = np.zeros_like(tau)
        step[safe] = num[safe] / den[safe]
        tau += step
        if np.max(np.abs(step)) <= NASA_INNER_TOL:
            break
    return tau


def _inner_newton_cols(theta_star, pot, n):
    """Newton iterations to convergence for the column multipliers."""
    sigma = np.zeros(theta_star.shape[1])
    for _ in range(NASA_INNER_CAP):
        shifted = theta_star - sigma[None, :]
        ps, pss = psi_pair(shifted, pot)
        num = ps.sum(axis=0) - 1.0 / n
        den = pss.sum(axis=0)
        safe = den >= EPS_DENOMINATOR
        step = np.zeros_like(sigma)
        step[safe] = num[safe] / den[safe]
        sigma += step
        if np.max(np.abs(step)) <= NASA_INNER_TOL:
            break
    return sigma


def nasa_solve(
    cost,
    lam: float,
    pot: Potential,
    tol: float = 1e-9,
    max_iter: int = 10000,
) -> TransportPlan:
    """Generic alternating-projection scaling for cofinite generators.

    Cycles (nonnegativity clamp, row projection, clamp, column projection,
    clamp) with the row/column multiplier found by Newton iterations run
    to convergence, until the plan's marginal residual reaches ``tol`` or
    ``max_iter`` cycles elapse.  The squared Euclidean path clamps at
    ``phi_prime(0) = -1``; the Shannon path never clamps.

    Rejects the beta potential: its conjugate domain is bounded below, so
    multi-step Newton updates can leave it (the reason the truncated
    single-step loop exists).
    """
    if not pot.is_cofinite:
        raise UnsupportedGeneratorError(
            "nasa_solve requires a cofinite generator (shannon or "
            "sq_euclidean); use robust_solve for the beta potential"
        )
    gamma = _validate_cost(cost)
    if not lam > 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    m, n = gamma.shape

    theta_tilde = init_dual(gamma, lam)
    theta_star = clamp_dual(theta_tilde, pot)
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        tau = _inner_newton_rows(theta_star, pot, m)
        theta_tilde = apply_row(theta_tilde, tau)
        theta_star = clamp_dual(theta_tilde, pot)

        sigma = _inner_newton_cols(theta_star, pot, n)
        theta_tilde = apply_col(theta_tilde, sigma)
        theta_star = clamp_dual(theta_tilde, pot)

        pi = psi_prime(theta_star, pot)
        row_res, col_res = _plan_residuals(pi)
        if row_res + col_res <= tol:
            converged = True
            break
    pi = psi_prime(theta_star, pot)
    row_res, col_res = _plan_residuals(pi)
    return TransportPlan(
        pi=pi,
        value=transport_value(pi, gamma),
        row_residual_l1=row_res,
        col_residual_l1=col_res,
        iterations_run=iterations,
        converged=converged,
    )


def _plan_matrix(plan) -> np.ndarray:
    pi = plan.pi if isinstance(plan, TransportPlan) else plan
    return np.asarray(pi, dtype=float)


def transport_value(plan, cost) -> float:
    """Frobenius inner product of a plan with the cost matrix.

    Summation is row-major over the dense product, so repeated evaluation
    on identical inputs is bit-identical.
    """
    pi = _plan_matrix(plan)
    gamma = np.asarray(cost, dtype=float)
    if pi.shape != gamma.shape:
        raise DimensionMismatchError(
            f"plan shape {pi.shape} != cost shape {gamma.shape}"
        )
    return float(np.sum(pi * gamma))


def marginal_residuals(plan, m: int, n: int) -> tuple[float, float]:
    """L1 distances of the plan's row/column sums from 1/m and 1/n."""
    pi = _plan_matrix(plan)
    row = float(np.abs(pi.sum(axis=1) - 1.0 / m).sum())
    col = float(np.abs(pi.sum(axis=0) - 1.0 / n).sum())
    return row, col
