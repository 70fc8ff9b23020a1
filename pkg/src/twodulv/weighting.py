"""Objective expert weights.

Two independent signals: an expert whose intervals are narrow is precise
(uncertainty-based weight), and an expert who stays close to the group
aggregate is consensual (deviation-based weight). Both weight vectors are
reciprocal-normalized, then blended by the facilitator parameter eta.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import LinguisticScale, TwoDULV, hamming_distance, uncertainty_degree
from .errors import ValidationError

WEIGHT_SUM_TOL = 1e-9

#: eta reproduces the reference dataset's combined weights; facilitators
#: override it per session.
DEFAULT_ETA = 0.4


@dataclass(frozen=True)
class ExpertWeights:
    """The three per-expert weight vectors and the blend parameter."""

    lambda1: tuple[float, ...]
    lambda2: tuple[float, ...]
    eta: float
    combined: tuple[float, ...]


def _reciprocal_weights(scores: Sequence[float], what: str) -> list[float]:
    """w_i proportional to 1/score_i.

    A zero score (a perfectly precise or perfectly consensual expert) is
    the formula's singular point; the limit assigns all weight uniformly
    to the zero-score experts and none to the rest, which is what we do.
    """
    if any(s < 0 for s in scores):
        raise ValidationError(f"negative {what} in {list(scores)}")
    zeros = [i for i, s in enumerate(scores) if s == 0]
    if zeros:
        return [1.0 / len(zeros) if i in zeros else 0.0 for i in range(len(scores))]
    inv = [1.0 / s for s in scores]
    total = sum(inv)
    return [v / total for v in inv]


def expert_uncertainty(rounds: Sequence[dict], scale: LinguisticScale) -> dict[str, float]:
    """Total uncertainty degree per expert, summed over every round and
    alternative of that expert's grids."""
    if not rounds:
        raise ValidationError("expert_uncertainty requires at least one round")
    experts = list(rounds[0].keys())
    return {
        e: sum(uncertainty_degree(cell, scale)
               for grid in rounds for cell in grid[e].values())
        for e in experts
    }


def uncertainty_weights(betas: Sequence[float]) -> list[float]:
    """lambda(1): reciprocal-normalized uncertainty totals (less
    uncertain -> heavier)."""
    return _reciprocal_weights(betas, "uncertainty degree")


def deviation_degree(rounds: Sequence[dict], group: dict,
                     scale: LinguisticScale) -> dict[str, float]:
    """Summed Hamming distance from each expert's round entries to that
    expert's temporal-aggregate entries."""
    if not rounds:
        raise ValidationError("deviation_degree requires at least one round")
    experts = list(rounds[0].keys())
    if list(group.keys()) != experts:
        raise ValidationError("group grid roster differs from the rounds")
    out = {}
    for e in experts:
        alts = list(rounds[0][e].keys())
        if list(group[e].keys()) != alts:
            raise ValidationError(f"group grid alternatives differ for expert {e}")
        out[e] = sum(hamming_distance(grid[e][a], group[e][a], scale)
                     for grid in rounds for a in alts)
    return out


def deviation_weights(zetas: Sequence[float]) -> list[float]:
    """lambda(2): reciprocal-normalized deviation totals (closer to the
    group -> heavier)."""
    return _reciprocal_weights(zetas, "deviation degree")


def combined_weights(lambda1: Sequence[float], lambda2: Sequence[float],
                     eta: float) -> ExpertWeights:
    """Affine blend lambda_i = eta*lambda1_i + (1-eta)*lambda2_i."""
    if not 0.0 <= eta <= 1.0:
        raise ValidationError(f"eta must lie in [0, 1], got {eta}")
    if len(lambda1) != len(lambda2):
        raise ValidationError("weight vectors differ in length")
    for name, vec in (("lambda1", lambda1), ("lambda2", lambda2)):
        if abs(sum(vec) - 1.0) > WEIGHT_SUM_TOL:
            raise ValidationError(f"{name} sums to {sum(vec)!r}, expected 1")
    combined = tuple(eta * w1 + (1.0 - eta) * w2 for w1, w2 in zip(lambda1, lambda2))
    return ExpertWeights(tuple(lambda1), tuple(lambda2), eta, combined)
