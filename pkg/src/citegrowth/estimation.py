"""Large-network bounds for the citation model and their inversion.

Each burned node passes the fire on to ``p/(1-p)`` further nodes on
average, so the expected number of ambassadors per episode is bounded
by the geometric series ``(1-p)/(1-2p)``. Combining it with the
``q/(1-q)`` links copied per ambassador, and conditioning on the episode
forming at least one link, bounds the mean degree. Both bounds are
treated as equalities when fitting ``p`` to an observed degree.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

P_MAX = 0.5 - 1e-9


class NoSolutionError(ValueError):
    """The target degree lies outside the range the model can reach."""


@dataclass(frozen=True)
class FitResult:
    p_hat: float
    q_fixed: float
    v_bar: float
    k_pred: float
    read_fraction: float

    def as_dict(self) -> dict:
        return asdict(self)


def _check_p(p: float) -> None:
    if not 0.0 <= p < 0.5:
        raise ValueError(f"p must lie in [0, 1/2), got {p}")


def expected_burned(p: float) -> float:
    """Mean number of ambassadors per episode, ``(1-p)/(1-2p)``."""
    _check_p(p)
    return (1.0 - p) / (1.0 - 2.0 * p)


def expected_degree(p: float, q: float) -> float:
    """Mean degree ``2 q v / (1 - q - (1-q)^(v+1))`` with ``v = expected_burned(p)``."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    v = expected_burned(p)
    return 2.0 * q * v / (1.0 - q - (1.0 - q) ** (v + 1.0))


def _bisect(f, target: float, lo: float, hi: float, tol: float = 1e-9, max_iter: int = 200) -> float:
    # f increasing on [lo, hi] with f(lo) <= target <= f(hi)
    if abs(f(lo) - target) <= tol:
        return lo
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        val = f(mid)
        if abs(val - target) <= tol:
            return mid
        if val < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    return 0.5 * (lo + hi)


def estimate_p(k_target: float, q: float) -> float:
    """Burning probability whose :func:`expected_degree` at fixed ``q`` equals ``k_target``."""
    if k_target <= 0:
        raise ValueError(f"target degree must be positive, got {k_target}")
    lo_k = expected_degree(0.0, q)
    hi_k = expected_degree(P_MAX, q)
    if not lo_k <= k_target <= hi_k:
        raise NoSolutionError(
            f"mean degree {k_target} unreachable at q={q}; feasible range is [{lo_k:.6g}, {hi_k:.6g}]"
        )
    return _bisect(lambda p: expected_degree(p, q), k_target, 0.0, P_MAX)


def read_fraction(p: float, k_network: float) -> float:
    """Share of cited papers actually read: ``2 v / k``."""
    if k_network <= 0:
        raise ValueError(f"mean degree must be positive, got {k_network}")
    return 2.0 * expected_burned(p) / k_network


def fit_cit(k_target: float, q: float) -> FitResult:
    p = estimate_p(k_target, q)
    return FitResult(
        p_hat=p,
        q_fixed=q,
        v_bar=expected_burned(p),
        k_pred=expected_degree(p, q),
        read_fraction=read_fraction(p, k_target),
    )


def ff_expected_degree(p: float) -> float:
    """FF links every burned node, so its bound is ``2 (1-p)/(1-2p)``."""
    return 2.0 * expected_burned(p)


def estimate_p_ff(k_target: float) -> float:
    """Closed-form inverse of :func:`ff_expected_degree`.

    This ignores neighborhood saturation; in practice it undershoots the
    ``p`` that realizes ``k_target`` (see :func:`calibrate_p_ff`).
    """
    if k_target < 2.0:
        raise NoSolutionError(f"FF mean degree is at least 2, got {k_target}")
    p = (k_target - 2.0) / (2.0 * k_target - 2.0)
    if p >= 0.5:
        raise NoSolutionError(f"no p in [0, 1/2) gives FF degree {k_target}")
    return p


def calibrate_p_ff(k_target: float, n: int, realizations: int = 3, seed: int = 0, tol: float = 0.05) -> float:
    """Simulation-based FF fit: bisect ``p`` so the ensemble mean degree at size ``n`` hits ``k_target``.

    Common random numbers (same seeds at every ``p``) keep the simulated
    degree close to monotone in ``p``.
    """
    from .generators import Model, ModelParams, generate
    from .rng import realization_seed

    if k_target < 2.0 - 2.0 / n:
        raise NoSolutionError(f"FF mean degree below tree level: {k_target}")

    def mean_degree(p: float) -> float:
        ks = []
        for r in range(realizations):
            g, _ = generate(ModelParams(Model.FF, n, p, seed=realization_seed(seed, r)))
            ks.append(2.0 * g.m / g.n)
        return math.fsum(ks) / len(ks)

    lo = estimate_p_ff(max(k_target, 2.0))
    hi = 0.49
    if mean_degree(hi) < k_target:
        raise NoSolutionError(f"FF at n={n} cannot reach mean degree {k_target}")
    return _bisect(mean_degree, k_target, lo, hi, tol=tol, max_iter=20)
