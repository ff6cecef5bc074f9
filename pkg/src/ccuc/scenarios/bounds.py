"""
Scenario-approach sample complexity.

The central quantity is the binomial tail

    B(N, eps, h) = sum_{i=0}^{h-1} C(N, i) eps^i (1 - eps)^(N - i),

which bounds the probability that a scenario solution with at most ``h``
support scenarios violates more than ``eps``. All evaluations run in log
space so that N in the tens of millions neither overflows nor underflows.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from ..errors import DataError

logger = logging.getLogger(__name__)

EPSILON_TOL = 1e-9


@dataclass(frozen=True)
class RiskSpec:
    """Target violation probability, confidence parameter and support bound."""

    epsilon: float
    beta: float
    h: int

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise DataError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0.0 < self.beta < 1.0:
            raise DataError(f"beta must lie in (0, 1), got {self.beta}")
        if int(self.h) != self.h or self.h < 1:
            raise DataError(f"h must be a positive integer, got {self.h}")
        object.__setattr__(self, "h", int(self.h))


@dataclass(frozen=True)
class EpsilonBound:
    """Guaranteed violation level for a given N; ``vacuous`` when N < h."""

    epsilon: float
    vacuous: bool = False


def _log_terms(n: int, eps: float, h: int) -> np.ndarray:
    """
    Log of the binomial pmf at i = 0..h-1.

    The last term is anchored with log-gamma; the others follow from the
    ratio recurrence t_{i+1} / t_i = (N - i) / (i + 1) * eps / (1 - eps),
    summed backwards so that running sums stay small where terms matter.
    """
    log_eps = math.log(eps)
    log_keep = math.log1p(-eps)
    k = h - 1
    log_top = (
        gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)
        + k * log_eps
        + (n - k) * log_keep
    )
    if h == 1:
        return np.array([log_top])
    i = np.arange(h - 1, dtype=float)
    log_ratio = np.log(n - i) - np.log(i + 1.0) + (log_eps - log_keep)
    suffix = np.cumsum(log_ratio[::-1])[::-1]
    return np.append(log_top - suffix, log_top)


def binomial_tail(n: int, eps: float, h: int) -> float:
    """
    Binomial tail ``sum_{i=0}^{h-1} C(n,i) eps^i (1-eps)^(n-i)``.

    Args:
        n: Number of scenarios
        eps: Violation level in (0, 1)
        h: Support-scenario bound, 1 <= h <= n + 1

    Returns:
        Tail probability in [0, 1]

    Raises:
        DataError: On domain violations.
    """
    if not 0.0 < eps < 1.0:
        raise DataError(f"eps must lie in (0, 1), got {eps}")
    if h < 1 or h > n + 1:
        raise DataError(f"need 1 <= h <= N + 1, got h={h}, N={n}")
    if h == 1:
        return float((1.0 - eps) ** n)
    return float(min(1.0, math.exp(logsumexp(_log_terms(n, eps, h)))))


def required_sample_size(spec: RiskSpec) -> int:
    """
    Smallest N with ``binomial_tail(N, eps, h) <= beta``.

    The tail is nonincreasing in N, so the answer is bracketed by doubling
    and then located by binary search. At N = h - 1 the tail is 1 > beta.
    """
    eps, beta, h = spec.epsilon, spec.beta, spec.h

    lo = h - 1  # known infeasible
    hi = max(h, 1)
    while binomial_tail(hi, eps, h) > beta:
        lo, hi = hi, hi * 2

    while hi - lo > 1:
        mid = (lo + hi) // 2
        if binomial_tail(mid, eps, h) <= beta:
            hi = mid
        else:
            lo = mid

    logger.debug("required_sample_size(eps=%s, beta=%s, h=%s) = %d", eps, beta, h, hi)
    return hi


def epsilon_bound(n: int, beta: float, h: int) -> EpsilonBound:
    """
    Smallest eps (within 1e-9) with ``binomial_tail(n, eps, h) <= beta``.

    The tail decreases in eps, so bisection on (0, 1) converges. When n < h
    the guarantee is vacuous and eps = 1 is returned with ``vacuous`` set.

    Raises:
        DataError: If beta is outside (0, 1) or h < 1.
    """
    if not 0.0 < beta < 1.0:
        raise DataError(f"beta must lie in (0, 1), got {beta}")
    if h < 1:
        raise DataError(f"h must be >= 1, got {h}")
    if n < h:
        logger.warning("epsilon bound is vacuous: N=%d < h=%d", n, h)
        return EpsilonBound(epsilon=1.0, vacuous=True)

    lo, hi = 0.0, 1.0
    while hi - lo > EPSILON_TOL:
        mid = 0.5 * (lo + hi)
        if binomial_tail(n, mid, h) <= beta:
            hi = mid
        else:
            lo = mid
    return EpsilonBound(epsilon=hi)
