"""Vector fitting of round-by-round preferences.

Each expert's rounds become rows of an expectation matrix S (one row per
round, one column per alternative). The stable preference is the unit
vector v maximizing sum_t <v, s^t>^2, i.e. the dominant eigenvector of
the symmetric PSD matrix F = S^T S. The rows are nonnegative, so F is
elementwise nonnegative and the Perron eigenvector can always be
oriented nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import LinguisticScale, TwoDULV, expectation
from .errors import ConvergenceError, DomainError, ValidationError

POWER_TOL = 1e-12
POWER_MAX_ITER = 10_000
RESIDUAL_BOUND = 1e-8
RANK_TIE_TOL = 1e-9


@dataclass(frozen=True)
class ExpectationMatrix:
    """Round-by-alternative expectation scores for one expert."""

    expert: str
    rows: tuple[tuple[float, ...], ...]  # T rows of length m


@dataclass(frozen=True)
class FittedPreference:
    """Unit dominant eigenvector of F = S^T S plus eigen diagnostics."""

    expert: str
    vector: tuple[float, ...]
    eigenvalue: float
    residual: float


@dataclass(frozen=True)
class GroupResult:
    group_vector: tuple[float, ...]
    ranking: tuple[str, ...]          # alternative ids, best first
    ties: tuple[tuple[str, ...], ...]  # groups of tied alternatives, if any


def cosine_similarity(u: Sequence[float], v: Sequence[float]) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValidationError(f"vector lengths differ: {u.shape} vs {v.shape}")
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise DomainError("cosine similarity undefined for a zero vector")
    return float(u @ v / (nu * nv))


def expectation_matrix(expert: str, rounds_cells: Sequence[Sequence[TwoDULV]],
                       scale: LinguisticScale, normalize_rows: bool = False) -> ExpectationMatrix:
    """Elementwise expectation of one expert's T x m grid of entries.

    ``normalize_rows`` rescales each round vector to unit norm before
    fitting. The reference dataset was computed from raw rows, so raw is
    the default; the toggle exists because the method's derivation
    mentions normalized rounds.
    """
    rows = []
    for cells in rounds_cells:
        row = [expectation(c, scale) for c in cells]
        if normalize_rows:
            n = float(np.linalg.norm(row))
            if n == 0:
                raise DomainError(f"cannot normalize all-zero round for expert {expert}")
            row = [x / n for x in row]
        rows.append(tuple(row))
    if not rows or not rows[0]:
        raise ValidationError("expectation matrix needs at least one round and one alternative")
    return ExpectationMatrix(expert, tuple(rows))


def fit_preference(matrix: ExpectationMatrix) -> FittedPreference:
    """Dominant eigenpair of F = S^T S by power iteration.

    Starts from the normalized all-ones vector; converged when successive
    iterates differ by < 1e-12 in the infinity norm, capped at 1e4
    iterations. The returned vector is unit-norm, oriented nonnegative,
    and must have eigen residual <= 1e-8; non-convergence (only possible
    with a tied dominant eigenvalue) raises ConvergenceError carrying the
    two leading Rayleigh quotients.
    """
    S = np.asarray(matrix.rows, dtype=float)
    F = S.T @ S
    m = F.shape[0]
    if not np.any(F):
        raise ValidationError(f"all-zero expectation matrix for expert {matrix.expert}")
    v = np.ones(m) / np.sqrt(m)
    converged = False
    for _ in range(POWER_MAX_ITER):
        w = F @ v
        n = np.linalg.norm(w)
        if n == 0:
            # start vector orthogonal to the range; perturb deterministically
            v = np.eye(m)[0]
            continue
        w /= n
        if np.abs(w - v).max() < POWER_TOL:
            v = w
            converged = True
            break
        v = w
    eigenvalue = float(v @ F @ v)
    residual = float(np.linalg.norm(F @ v - eigenvalue * v))
    if not converged or residual > RESIDUAL_BOUND:
        top2 = np.sort(np.linalg.eigvalsh(F))[-2:][::-1]
        raise ConvergenceError(
            f"power iteration failed to converge for expert {matrix.expert}", top2)
    if v.sum() < 0:
        v = -v
    v[v == 0] = 0.0  # normalize -0.0
    return FittedPreference(matrix.expert, tuple(float(x) for x in v),
                            eigenvalue, residual)


def group_preference(fitted: Sequence[FittedPreference], weights: Sequence[float],
                     alternatives: Sequence[str]) -> GroupResult:
    """Weighted blend of the fitted vectors, ranked best-first.

    Components within RANK_TIE_TOL of each other tie; ties keep the
    alternatives' declaration order and are reported explicitly.
    """
    if not fitted:
        raise ValidationError("group_preference requires at least one fitted vector")
    m = len(alternatives)
    for f in fitted:
        if len(f.vector) != m:
            raise ValidationError(
                f"fitted vector for {f.expert} has length {len(f.vector)}, expected {m}")
    if len(weights) != len(fitted):
        raise ValidationError("one weight per fitted vector required")
    group = [sum(w * f.vector[j] for w, f in zip(weights, fitted)) for j in range(m)]
    order = sorted(range(m), key=lambda j: -group[j])
    # group near-equal components into tie blocks, each kept in
    # declaration order
    blocks = [[order[0]]]
    for prev, cur in zip(order, order[1:]):
        if abs(group[prev] - group[cur]) <= RANK_TIE_TOL:
            blocks[-1].append(cur)
        else:
            blocks.append([cur])
    ranking = []
    ties = []
    for block in blocks:
        block = sorted(block)
        ranking.extend(block)
        if len(block) > 1:
            ties.append(tuple(alternatives[j] for j in block))
    return GroupResult(tuple(group), tuple(alternatives[j] for j in ranking), tuple(ties))
