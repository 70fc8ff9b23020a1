"""Generalized weighted aggregation of 2DULVs.

The operator is a weighted power mean of exponent alpha applied to each
judgment endpoint, with min-combined reliability: judgments average,
trust does not. alpha=1 is the plain weighted-average special case.
"""

from __future__ import annotations

import math
from typing import Sequence

from .core import LinguisticScale, TwoDULV, UncertainInterval
from .errors import DomainError, ValidationError

WEIGHT_SUM_TOL = 1e-10

#: Above this |alpha| the power mean is evaluated in the log domain;
#: b**alpha for b <= 6 overflows doubles well before alpha ~ 400, and
#: accuracy degrades long before that.
_LOG_DOMAIN_ALPHA = 8.0


def check_weights(weights: Sequence[float]) -> list[float]:
    """Validate a normalized weight vector: nonnegative, summing to 1."""
    ws = [float(w) for w in weights]
    if any(w < 0 for w in ws):
        raise ValidationError(f"negative weight in {ws}")
    if abs(sum(ws) - 1.0) > WEIGHT_SUM_TOL:
        raise ValidationError(f"weights sum to {sum(ws)!r}, expected 1")
    return ws


def _power_mean(values: Sequence[float], weights: Sequence[float], alpha: float) -> float:
    """(sum_k w_k x_k**alpha)**(1/alpha), left-to-right summation order."""
    if abs(alpha) <= _LOG_DOMAIN_ALPHA:
        acc = 0.0
        for w, x in zip(weights, values):
            acc += w * x ** alpha
        return acc ** (1.0 / alpha)
    # log-sum-exp form for large |alpha|
    terms = [(math.log(w) + alpha * math.log(x)) if w > 0 and x > 0 else None
             for w, x in zip(weights, values)]
    finite = [t for t in terms if t is not None]
    if not finite:
        return 0.0
    m = max(finite)
    s = sum(math.exp(t - m) for t in finite)
    return math.exp((m + math.log(s)) / alpha)


def dulgwa(values: Sequence[TwoDULV], weights: Sequence[float], alpha: float,
           scale: LinguisticScale) -> TwoDULV:
    """Aggregate ``values`` with ``weights`` at power-mean exponent ``alpha``.

    Judgment endpoints combine as weighted power means; reliability
    endpoints take the componentwise minimum over all inputs. alpha must
    be nonzero; negative alpha additionally requires every judgment
    subscript to be strictly positive.
    """
    if not values:
        raise ValidationError("dulgwa requires at least one value")
    ws = check_weights(weights)
    if len(ws) != len(values):
        raise ValidationError(
            f"{len(values)} values but {len(ws)} weights")
    if alpha == 0:
        raise ValidationError("alpha must be nonzero")
    if alpha < 0:
        for k, v in enumerate(values):
            if v.judgment.lo <= 0:
                raise DomainError(
                    f"alpha={alpha} < 0 but value #{k} has judgment "
                    f"subscript {v.judgment.lo} <= 0")
    lo = _power_mean([v.judgment.lo for v in values], ws, alpha)
    hi = _power_mean([v.judgment.hi for v in values], ws, alpha)
    rel_lo = min(v.reliability.lo for v in values)
    rel_hi = min(v.reliability.hi for v in values)
    # power means of lo's vs hi's preserve order, but guard against the
    # last-ulp inversions float arithmetic can produce
    if lo > hi:
        lo, hi = hi, lo
    return TwoDULV(UncertainInterval(lo, hi), UncertainInterval(rel_lo, rel_hi))


def temporal_aggregate(rounds: Sequence[dict], alpha: float, scale: LinguisticScale,
                       round_weights: Sequence[float] | None = None) -> dict:
    """Per-expert, per-alternative aggregate over interaction rounds.

    ``rounds`` is a list of {expert: {alternative: TwoDULV}} grids sharing
    one roster. Rounds are equally weighted by default (the reference
    dataset is only consistent with w_t = 1/T), overridable via
    ``round_weights``.
    """
    if not rounds:
        raise ValidationError("temporal_aggregate requires at least one round")
    experts = list(rounds[0].keys())
    alts = list(rounds[0][experts[0]].keys())
    for t, grid in enumerate(rounds):
        if list(grid.keys()) != experts or any(list(grid[e].keys()) != alts for e in experts):
            raise ValidationError(f"round {t + 1} roster differs from round 1")
    if round_weights is None:
        round_weights = [1.0 / len(rounds)] * len(rounds)
    return {
        e: {a: dulgwa([grid[e][a] for grid in rounds], round_weights, alpha, scale)
            for a in alts}
        for e in experts
    }
