"""Cost-matrix construction, threshold heuristics, and budget-aware rescaling.

The outlier tolerance ``z`` can come from the median of the full cost
matrix or from a subsampling heuristic on the clean set
(:func:`estimate_z`).  Because the iteration budget depends on ``z`` only
through ``z/lam``, multiplying the cost matrix and ``z`` by a common
factor moves the budget wherever needed without changing which points
qualify as outliers; :func:`auto_scale` picks that factor.
"""

import math

import numpy as np
from scipy.spatial.distance import cdist

from .errors import AutoScaleError, DimensionMismatchError
from .solver import SolverConfig, iteration_budget

# Offset added to the inverted budget target so the re-evaluated bound
# lands strictly above the integer target instead of exactly on it
# (where the strict-inequality budget would drop by one).
_TARGET_NUDGE = 1e-9


def _as_points(x) -> np.ndarray:
    pts = np.asarray(x, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.size == 0:
        raise DimensionMismatchError("point cloud must be a nonempty 2-D array")
    if not np.all(np.isfinite(pts)):
        raise ValueError("point cloud must be finite")
    return pts


def sq_euclidean_cost(x, y) -> np.ndarray:
    """Pairwise squared Euclidean distances between two point clouds."""
    xp = _as_points(x)
    yp = _as_points(y)
    if xp.shape[1] != yp.shape[1]:
        raise DimensionMismatchError(
            f"point dimensions differ: {xp.shape[1]} vs {yp.shape[1]}"
        )
    return cdist(xp, yp, metric="sqeuclidean")


def median_threshold(cost) -> float:
    """Median of all cost entries (midpoint of the central pair when even)."""
    gamma = np.asarray(cost, dtype=float)
    if gamma.size == 0:
        raise ValueError("cost matrix is empty")
    return float(np.median(gamma))


def _nearest_rank(values: np.ndarray, percentile: float) -> float:
    """Nearest-rank percentile: value at rank ceil(p/100 * N) of the sorted list."""
    s = np.sort(values)
    rank = math.ceil(percentile / 100.0 * s.size)
    return float(s[rank - 1])


def estimate_z(clean, percentile: float, seed: int) -> float:
    """Distance-tolerance heuristic from a clean point cloud.

    Shuffles the points with the given seed and splits them into two
    halves (the first floor(k/2) shuffled points become the rows, the
    remaining ceil(k/2) the reference half).  For each row point, takes
    the minimum squared Euclidean distance to the reference half, and
    returns the nearest-rank percentile of those minima.

    Deterministic for a fixed seed and nondecreasing in the percentile.
    """
    pts = _as_points(clean)
    k = pts.shape[0]
    if k < 4:
        raise ValueError(f"need at least 4 clean points, got {k}")
    if not 0.0 < percentile <= 100.0:
        raise ValueError(f"percentile must be in (0, 100], got {percentile}")
    perm = np.random.default_rng(seed).permutation(k)
    half = k // 2
    rows = pts[perm[:half]]
    reference = pts[perm[half:]]
    minima = sq_euclidean_cost(rows, reference).min(axis=1)
    return _nearest_rank(minima, percentile)


def auto_scale(cost, z: float, cfg: SolverConfig, target_range: tuple[int, int]):
    """Scale the cost matrix and z jointly so the budget lands in a range.

    Solves the budget bound for the scale ``s = lam * (T* D + 1) /
    ((beta - 1) z)`` with ``D = (1/m)^(beta-1) + (1/n)^(beta-1)`` and
    ``T*`` the midpoint of ``target_range`` (a tiny nudge keeps the
    re-evaluated bound strictly above the integer target).  The resulting
    budget is re-checked before returning; if the midpoint misses, every
    integer target in the range is tried.

    Returns ``(scale, scaled_cost, scaled_z)``.  When the unscaled budget
    is already inside the range, returns scale 1 and the inputs unchanged.
    """
    gamma = np.asarray(cost, dtype=float)
    if gamma.ndim != 2 or gamma.size == 0:
        raise DimensionMismatchError("cost must be a nonempty 2-D matrix")
    if not z > 0.0:
        raise ValueError(f"z must be positive, got {z}")
    lo, hi = int(target_range[0]), int(target_range[1])
    if lo > hi or lo < 1:
        raise ValueError(f"target range [{lo}, {hi}] must be nonempty with lo >= 1")
    m, n = gamma.shape

    try:
        if lo <= iteration_budget(z, cfg, m, n).budget <= hi:
            return 1.0, gamma, z
    except (ValueError, ArithmeticError):
        pass

    beta, lam = cfg.beta, cfg.lam
    decrement_sum = (1.0 / m) ** (beta - 1.0) + (1.0 / n) ** (beta - 1.0)
    midpoint = (lo + hi) / 2.0
    for t_star in [midpoint] + list(range(lo, hi + 1)):
        s = lam * ((t_star + _TARGET_NUDGE) * decrement_sum + 1.0) / ((beta - 1.0) * z)
        if not (s > 0.0 and math.isfinite(s)):
            continue
        try:
            budget = iteration_budget(s * z, cfg, m, n).budget
        except (ValueError, ArithmeticError):
            continue
        if lo <= budget <= hi:
            return s, s * gamma, s * z
    raise AutoScaleError(
        f"no scale places the iteration budget inside [{lo}, {hi}] "
        f"for beta={beta}, lam={lam}, z={z}, shape=({m}, {n})"
    )
