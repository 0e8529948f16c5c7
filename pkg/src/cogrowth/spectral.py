"""Perron root, entropy and growth rate of a subgroup's reduced-word language."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .automata import CountMatrix, adjacency_matrix, is_ergodic, subgroup_dfa, without_start_state
from .core import CoreGraph, conjugacy_reduce, is_conjugacy_reduced, subgroup_rank
from .exceptions import AutomatonError, ConvergenceError, TrivialSubgroupError


@dataclass(frozen=True)
class SpectralResult:
    perron_root: float
    entropy: float
    growth_rate: float
    iterations: int
    residual: float

    @property
    def entropy_bits(self) -> float:
        return self.entropy / math.log(2)


def power_iteration(
    matrix, tol: float = 1e-10, max_iter: int = 100_000
) -> tuple[float, int, float]:
    """Spectral radius of a nonnegative matrix as ``(root, iterations, residual)``.

    Iterates on M + I so that periodic (imprimitive) matrices converge too,
    normalising in the max norm. For a positive iterate x the Collatz-Wielandt
    ratios min (Ax)_i/x_i and max (Ax)_i/x_i bracket the root; iteration stops
    once the bracket is narrower than ``tol``. Reducible matrices can leave
    zeros in x or keep the bracket open, so a stationary iterate is accepted
    as well.
    """
    if isinstance(matrix, CountMatrix):
        matrix = matrix.to_numpy()
    m = np.asarray(matrix, dtype=float)
    n = m.shape[0]
    if n == 0 or not m.any():
        return 0.0, 0, 0.0
    if (m < 0).any():
        raise ValueError("power iteration needs a nonnegative matrix")
    shifted = m + np.eye(n)
    x = np.ones(n)
    for it in range(1, max_iter + 1):
        y = shifted @ x
        scale = float(y.max())
        positive = x > 0
        if positive.all():
            ratios = y / x
            lo, hi = float(ratios.min()), float(ratios.max())
            if hi - lo < tol:
                root = 0.5 * (lo + hi) - 1.0
                y /= scale
                return root, it, float(np.max(np.abs(m @ y - root * y)))
        y /= scale
        if np.max(np.abs(y - x)) < tol:
            root = scale - 1.0
            return root, it, float(np.max(np.abs(m @ y - root * y)))
        x = y
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")


def perron_root(matrix, tol: float = 1e-10, max_iter: int = 100_000) -> float:
    return power_iteration(matrix, tol, max_iter)[0]


def entropy_of_subgroup(c: CoreGraph) -> SpectralResult:
    """Entropy of the language of reduced words of H.

    Cyclic subgroups have entropy 0. Otherwise the subgroup is first conjugated
    to a conjugacy-reduced one (entropy is a conjugation invariant), whose
    start-free automaton is then ergodic; the entropy is the log of the Perron
    root of its adjacency matrix.
    """
    if c.is_trivial:
        raise TrivialSubgroupError("entropy is undefined for the trivial subgroup")
    if subgroup_rank(c) == 1:
        return SpectralResult(1.0, 0.0, 1.0, 0, 0.0)
    if not is_conjugacy_reduced(c):
        c = conjugacy_reduce(c)[1]
    loop = without_start_state(subgroup_dfa(c))
    if not is_ergodic(loop):
        raise AutomatonError("start-free automaton of a conjugacy-reduced subgroup is not ergodic")
    root, iterations, residual = power_iteration(adjacency_matrix(loop))
    return SpectralResult(root, math.log(root), root, iterations, residual)


def empirical_growth_rate(coeffs: Sequence[int]) -> float:
    """Estimate lim sup |c_n|^(1/n) from a finite coefficient list.

    Plain n-th roots converge slowly because of the constant in front of the
    exponential, so the constant is cancelled instead: the largest coefficient
    in the tail window is divided by the largest one in a window half a
    sequence earlier, and the ratio's root is taken over the actual index
    gap. Windows wider than the period of the sequence always land on the
    same residue class, which keeps periodic sequences exact.
    """
    c = [abs(int(x)) for x in coeffs]
    if len(c) < 10:
        raise ValueError("need at least 10 coefficients")
    top = len(c) - 1
    width = max(2, len(c) // 3)
    lag = len(c) // 2

    def window_max(hi: int) -> tuple[int, int]:
        best, where = 0, -1
        for k in range(max(1, hi - width + 1), hi + 1):
            if c[k] >= best and c[k] > 0:
                best, where = c[k], k
        return best, where

    a, ia = window_max(top)
    if a == 0:
        raise ValueError("all coefficients in the tail window are zero")
    b, ib = window_max(top - lag)
    if b == 0 or ia == ib:
        return a ** (1.0 / ia)
    return math.exp((math.log(a) - math.log(b)) / (ia - ib))
