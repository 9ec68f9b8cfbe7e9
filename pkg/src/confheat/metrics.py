"""The configuration functionals B_n and the four distances between configurations.

* b_n: sum of exp(-|x|/n) over particles; finiteness for all n is the membership
  test for the computational state space.
* flat_metric: the scale-i dual-Lipschitz distance d_{K,i}, computed exactly for
  finite point measures by a small LP (values of the test function on the
  weighted support; the cutoff |f(x)| <= max(0, i - |x|) encodes the vanishing
  condition plus 1-Lipschitz extension).
* d_k / d1 / d_infty: the summed-scale flat metric and its B_n-augmented variants,
  with explicit truncation errors.
* rho: the L2 matching (Wasserstein-type) distance, infinite across unequal
  cardinalities, solved by assignment on the squared-distance cost matrix.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import CapacityError
from .points import Configuration, as_multiset
from .simplex import solve_lp

#: largest weighted-support size accepted by the flat-metric LP
FLAT_METRIC_MAX_SUPPORT = 120


@dataclass(frozen=True)
class MetricValue:
    """A metric value together with the truncation error of any dropped series tail."""

    value: float
    truncation_error: float

    def __post_init__(self):
        if self.value < 0 or self.truncation_error < 0:
            raise ValueError("metric values and truncation errors are nonnegative")


def b_n(gamma: Configuration, n: int) -> float:
    """B_n(gamma) = sum over particles (with multiplicity) of exp(-|x|/n)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if gamma.n_sites == 0:
        return 0.0
    return float(np.sum(gamma.multiplicities * np.exp(-gamma.norms() / n)))


def _weighted_support(g1: Configuration, g2: Configuration):
    if g1.dim != g2.dim:
        raise ValueError("configurations must share a dimension")
    a, b = as_multiset(g1), as_multiset(g2)
    weights: dict[bytes, tuple[np.ndarray, int]] = {}
    for cfg, sign in ((a, 1), (b, -1)):
        for p, m in zip(cfg.positions, cfg.multiplicities):
            key = p.tobytes()
            prev = weights.get(key)
            w = (prev[1] if prev else 0) + sign * int(m)
            weights[key] = (p, w)
    pts = [p for p, w in weights.values() if w != 0]
    wts = [w for _, w in weights.values() if w != 0]
    if not pts:
        return np.zeros((0, g1.dim)), np.zeros(0)
    return np.array(pts), np.array(wts, dtype=float)


def flat_metric(g1: Configuration, g2: Configuration, i: int) -> float:
    """d_{K,i}(g1, g2): sup of |integral of f d(g1 - g2)| over 1-Lipschitz f
    vanishing outside B(0, i).

    Solved as an LP in the f-values on the weighted support; exact for point
    measures by Lipschitz extension of any feasible assignment.
    """
    if i < 1:
        raise ValueError("scale index i must be a positive integer")
    pts, w = _weighted_support(g1, g2)
    k = pts.shape[0]
    if k == 0:
        return 0.0
    if k > FLAT_METRIC_MAX_SUPPORT:
        raise CapacityError(f"flat-metric support of {k} points exceeds {FLAT_METRIC_MAX_SUPPORT}")
    caps = np.maximum(0.0, i - np.linalg.norm(pts, axis=1))
    if caps.max() == 0.0:
        return 0.0
    # variables g_j = f_j + cap_j >= 0; every RHS below is >= 0 because the cap
    # profile is itself 1-Lipschitz
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    rows = []
    rhs = []
    for j in range(k):
        for l in range(k):
            if j == l:
                continue
            row = np.zeros(k)
            row[j] = 1.0
            row[l] = -1.0
            rows.append(row)
            rhs.append(dist[j, l] + caps[j] - caps[l])
    for j in range(k):
        row = np.zeros(k)
        row[j] = 1.0
        rows.append(row)
        rhs.append(2.0 * caps[j])
    result = solve_lp(w, np.array(rows), np.array(rhs))
    value = result.value - float(w @ caps)
    if value < -1.0e-6:
        raise AssertionError(f"flat-metric LP returned {value}; optimum must be >= 0")
    return max(value, 0.0)


def d_k(g1: Configuration, g2: Configuration, i_max: int = 20) -> MetricValue:
    """Summed-scale flat metric sum_i 2^-i d_{K,i}/(1 + d_{K,i}), truncated at i_max."""
    if i_max < 1:
        raise ValueError("i_max must be >= 1")
    total = 0.0
    for i in range(1, i_max + 1):
        v = flat_metric(g1, g2, i)
        total += 2.0**-i * v / (1.0 + v)
    return MetricValue(total, 2.0**-i_max)


def d1(g1: Configuration, g2: Configuration, i_max: int = 20) -> float:
    """d_1 = d_K (truncated) + |B_1(g1) - B_1(g2)|."""
    return d_k(g1, g2, i_max).value + abs(b_n(g1, 1) - b_n(g2, 1))


def d_infty(g1: Configuration, g2: Configuration, i_max: int = 20, n_max: int = 20) -> MetricValue:
    """d_infty = d_K + sum_n 2^-n |Delta B_n| / (1 + |Delta B_n|), both series truncated."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    base = d_k(g1, g2, i_max)
    total = base.value
    for n in range(1, n_max + 1):
        diff = abs(b_n(g1, n) - b_n(g2, n))
        total += 2.0**-n * diff / (1.0 + diff)
    return MetricValue(total, base.truncation_error + 2.0**-n_max)


def rho(g1: Configuration, g2: Configuration) -> float:
    """L2 matching distance: min over particle bijections of the l2 displacement.

    Returns inf when the particle counts (with multiplicity) differ; that is a
    value of the metric, not an error.
    """
    if g1.dim != g2.dim:
        raise ValueError("configurations must share a dimension")
    x = g1.expand()
    y = g2.expand()
    if x.shape[0] != y.shape[0]:
        return math.inf
    if x.shape[0] == 0:
        return 0.0
    cost = np.sum((x[:, None, :] - y[None, :, :]) ** 2, axis=2)
    rows, cols = linear_sum_assignment(cost)
    return math.sqrt(float(cost[rows, cols].sum()))


def rho_bruteforce(g1: Configuration, g2: Configuration, max_points: int = 8) -> float:
    """Exhaustive-permutation oracle for rho; exact for small configurations."""
    x = g1.expand()
    y = g2.expand()
    if x.shape[0] != y.shape[0]:
        return math.inf
    n = x.shape[0]
    if n == 0:
        return 0.0
    if n > max_points:
        raise CapacityError(f"brute-force matching limited to {max_points} points")
    best = math.inf
    for perm in itertools.permutations(range(n)):
        total = float(np.sum((x - y[list(perm)]) ** 2))
        if total < best:
            best = total
    return math.sqrt(best)
