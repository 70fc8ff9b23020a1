"""Session data model, persistence, and the ten-step batch run.

A session is scale + rosters + ordered rounds + the parameters eta and
alpha. ``run_pipeline`` turns it into a DecisionReport holding every
intermediate, so the report is a pure function of the session and fully
recomputable. Persistence is canonical JSON: floats at 12 significant
digits, sorted keys, fixed separators, which makes repeat runs
byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
from contextlib import contextmanager
from dataclasses import dataclass, field, replace

from .aggregation import temporal_aggregate
from .consensus import expectation_matrix, fit_preference, group_preference
from .core import LinguisticScale, TwoDULV, canonicalize, uncertainty_degree, \
    hamming_distance
from .errors import PipelineError, TwoDulvError, ValidationError
from .weighting import (combined_weights, deviation_weights, uncertainty_weights)

SESSION_SCHEMA = "gdm/1"
REPORT_SCHEMA = "gdm-report/1"


@dataclass(frozen=True)
class RoundMatrix:
    """One interaction round: a complete expert x alternative grid of
    canonical TwoDULV entries."""

    index: int
    entries: dict  # expert -> {alternative: TwoDULV}


@dataclass(frozen=True)
class Session:
    scale: LinguisticScale
    experts: tuple[str, ...]
    alternatives: tuple[str, ...]
    rounds: tuple[RoundMatrix, ...]
    eta: float
    alpha: float
    status: str = "open"  # open | finalized
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class DecisionReport:
    """Every intermediate of a run, in roster order.

    Grids are nested lists indexed [round][expert][alternative] (or
    [expert][alternative]); weight vectors align with ``experts``.
    """

    experts: tuple[str, ...]
    alternatives: tuple[str, ...]
    eta: float
    alpha: float
    normalize_rows: bool
    uncertainty_grids: list       # [t][i][j] beta per cell
    uncertainty_totals: list      # [i]
    lambda1: list
    group_grid: list              # [i][j] -> [a, b, c, d]
    distance_grids: list          # [t][i][j]
    zeta: list
    lambda2: list
    lambda_combined: list
    expectation_matrices: list    # [i][t][j]
    fitted: list                  # [i] -> {expert, vector, eigenvalue, residual}
    group_vector: list
    ranking: list
    ties: list
    warnings: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Validation / construction

def validate_session(doc: dict) -> Session:
    """Canonicalize a raw session document.

    Collects the complete list of problems before raising; reversed
    intervals are repaired with a warning rather than rejected.
    """
    problems: list[str] = []
    warnings: list[str] = []
    if not isinstance(doc, dict):
        raise ValidationError("session document must be a JSON object")
    if doc.get("schema") != SESSION_SCHEMA:
        raise ValidationError(
            f"unsupported session schema {doc.get('schema')!r}, expected {SESSION_SCHEMA!r}")

    scale_doc = doc.get("scale") or {}
    try:
        scale = LinguisticScale(int(scale_doc.get("l", 0)), int(scale_doc.get("z", 0)))
    except (ValidationError, TypeError, ValueError) as err:
        problems.append(f"bad scale: {err}")
        scale = None

    eta = doc.get("eta", 0.4)
    if not (isinstance(eta, (int, float)) and 0.0 <= eta <= 1.0):
        problems.append(f"eta must lie in [0, 1], got {eta!r}")
    alpha = doc.get("alpha", 1.0)
    if not (isinstance(alpha, (int, float)) and math.isfinite(alpha) and alpha != 0):
        problems.append(f"alpha must be a nonzero finite number, got {alpha!r}")

    experts = list(doc.get("experts") or [])
    alternatives = list(doc.get("alternatives") or [])
    if len(experts) < 1:
        problems.append("at least one expert required")
    if len(alternatives) < 2:
        problems.append("at least two alternatives required")
    if len(set(experts)) != len(experts):
        problems.append("duplicate expert ids")
    if len(set(alternatives)) != len(alternatives):
        problems.append("duplicate alternative ids")

    rounds_doc = doc.get("rounds") or []
    indices = [r.get("index") for r in rounds_doc]
    if len(set(indices)) != len(indices):
        problems.append(f"duplicate round indices in {indices}")
    elif indices != list(range(1, len(indices) + 1)):
        problems.append(f"round indices must be contiguous 1..T, got {indices}")

    rounds = []
    if scale is not None:
        for rdoc in rounds_doc:
            idx = rdoc.get("index")
            entries_doc = rdoc.get("entries") or {}
            grid = {}
            for e in experts:
                row = {}
                cells = entries_doc.get(e)
                if cells is None:
                    problems.append(f"round {idx}: missing expert {e}")
                    continue
                for a in alternatives:
                    raw = cells.get(a)
                    label = f"expert {e}, alternative {a}, round {idx}"
                    if raw is None:
                        problems.append(f"missing cell at {label}")
                        continue
                    if not (isinstance(raw, (list, tuple)) and len(raw) == 4):
                        problems.append(f"cell at {label} must be a 4-tuple [a,b,c,d]")
                        continue
                    try:
                        value, swapped = canonicalize(*raw, scale=scale, label=label)
                    except ValidationError as err:
                        problems.extend(err.problems)
                        continue
                    if swapped:
                        warnings.append(f"reversed interval normalized at {label}")
                    row[a] = value
                grid[e] = row
            rounds.append(RoundMatrix(idx, grid))

    if problems:
        raise ValidationError(problems)
    return Session(scale, tuple(experts), tuple(alternatives), tuple(rounds),
                   float(eta), float(alpha), str(doc.get("status", "open")),
                   tuple(warnings))


def parse_round_csv(text: str) -> dict:
    """Spreadsheet import: header ``expert,alternative,a,b,c,d``, one row
    per cell. Returns the raw entries mapping for one round."""
    reader = csv.DictReader(io.StringIO(text))
    required = {"expert", "alternative", "a", "b", "c", "d"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise ValidationError(
            f"round CSV must have header expert,alternative,a,b,c,d, got {reader.fieldnames}")
    entries: dict = {}
    problems = []
    for lineno, row in enumerate(reader, start=2):
        try:
            cell = [float(row[k]) for k in ("a", "b", "c", "d")]
        except (TypeError, ValueError):
            problems.append(f"line {lineno}: non-numeric subscript")
            continue
        entries.setdefault(row["expert"], {})[row["alternative"]] = cell
    if problems:
        raise ValidationError(problems)
    return entries


# ---------------------------------------------------------------------------
# The run

@contextmanager
def _step(number: int, name: str):
    try:
        yield
    except PipelineError:
        raise
    except TwoDulvError as err:
        raise PipelineError(number, name, err) from err


def run_pipeline(session: Session, normalize_rows: bool = False) -> DecisionReport:
    """Execute the ten decision steps on a validated session."""
    if not session.rounds:
        raise ValidationError("session has no rounds")
    scale = session.scale
    experts, alts = session.experts, session.alternatives
    grids = [r.entries for r in session.rounds]

    with _step(1, "uncertainty degrees"):
        beta_grids = [[[uncertainty_degree(g[e][a], scale) for a in alts]
                       for e in experts] for g in grids]
    with _step(2, "uncertainty-based weights"):
        beta_totals = [math.fsum(bg[i][j] for bg in beta_grids for j in range(len(alts)))
                       for i in range(len(experts))]
        lambda1 = uncertainty_weights(beta_totals)
    with _step(3, "temporal aggregation"):
        group = temporal_aggregate(grids, session.alpha, scale)
    with _step(4, "distance grids"):
        dist_grids = [[[hamming_distance(g[e][a], group[e][a], scale) for a in alts]
                       for e in experts] for g in grids]
    with _step(5, "deviation-based weights"):
        zeta = [math.fsum(dg[i][j] for dg in dist_grids for j in range(len(alts)))
                for i in range(len(experts))]
        lambda2 = deviation_weights(zeta)
    with _step(6, "combined weights"):
        weights = combined_weights(lambda1, lambda2, session.eta)
    with _step(7, "expectation matrices"):
        matrices = [expectation_matrix(e, [[g[e][a] for a in alts] for g in grids],
                                       scale, normalize_rows=normalize_rows)
                    for e in experts]
    with _step(9, "preference fitting"):
        fitted = [fit_preference(m) for m in matrices]
    with _step(10, "group ranking"):
        result = group_preference(fitted, weights.combined, alts)

    return DecisionReport(
        experts=experts,
        alternatives=alts,
        eta=session.eta,
        alpha=session.alpha,
        normalize_rows=normalize_rows,
        uncertainty_grids=beta_grids,
        uncertainty_totals=beta_totals,
        lambda1=list(lambda1),
        group_grid=[[_cell_list(group[e][a]) for a in alts] for e in experts],
        distance_grids=dist_grids,
        zeta=zeta,
        lambda2=list(lambda2),
        lambda_combined=list(weights.combined),
        expectation_matrices=[[list(row) for row in m.rows] for m in matrices],
        fitted=[{"expert": f.expert, "vector": list(f.vector),
                 "eigenvalue": f.eigenvalue, "residual": f.residual}
                for f in fitted],
        group_vector=list(result.group_vector),
        ranking=list(result.ranking),
        ties=[list(t) for t in result.ties],
        warnings=list(session.warnings),
    )


def _cell_list(v: TwoDULV) -> list[float]:
    return [v.judgment.lo, v.judgment.hi, v.reliability.lo, v.reliability.hi]


# ---------------------------------------------------------------------------
# Persistence

def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def canonical_json(obj) -> str:
    """Deterministic serialization: 12 significant digits, sorted keys."""
    return json.dumps(_round_floats(obj), sort_keys=True, separators=(",", ":")) + "\n"


def session_to_dict(session: Session) -> dict:
    return {
        "schema": SESSION_SCHEMA,
        "scale": {"l": session.scale.l, "z": session.scale.z},
        "eta": session.eta,
        "alpha": session.alpha,
        "status": session.status,
        "experts": list(session.experts),
        "alternatives": list(session.alternatives),
        "rounds": [
            {"index": r.index,
             "entries": {e: {a: _cell_list(r.entries[e][a])
                             for a in session.alternatives}
                         for e in session.experts}}
            for r in session.rounds
        ],
    }


def report_to_dict(report: DecisionReport) -> dict:
    d = {
        "schema": REPORT_SCHEMA,
        "experts": list(report.experts),
        "alternatives": list(report.alternatives),
        "eta": report.eta,
        "alpha": report.alpha,
        "normalize_rows": report.normalize_rows,
        "uncertainty_grids": report.uncertainty_grids,
        "uncertainty_totals": report.uncertainty_totals,
        "lambda1": report.lambda1,
        "group_grid": report.group_grid,
        "distance_grids": report.distance_grids,
        "zeta": report.zeta,
        "lambda2": report.lambda2,
        "lambda": report.lambda_combined,
        "expectation_matrices": report.expectation_matrices,
        "fitted": report.fitted,
        "group_vector": report.group_vector,
        "ranking": report.ranking,
        "ties": report.ties,
        "warnings": report.warnings,
    }
    return d


def report_from_dict(doc: dict) -> DecisionReport:
    if doc.get("schema") != REPORT_SCHEMA:
        raise ValidationError(
            f"unsupported report schema {doc.get('schema')!r}, expected {REPORT_SCHEMA!r}")
    return DecisionReport(
        experts=tuple(doc["experts"]),
        alternatives=tuple(doc["alternatives"]),
        eta=doc["eta"],
        alpha=doc["alpha"],
        normalize_rows=doc["normalize_rows"],
        uncertainty_grids=doc["uncertainty_grids"],
        uncertainty_totals=doc["uncertainty_totals"],
        lambda1=doc["lambda1"],
        group_grid=doc["group_grid"],
        distance_grids=doc["distance_grids"],
        zeta=doc["zeta"],
        lambda2=doc["lambda2"],
        lambda_combined=doc["lambda"],
        expectation_matrices=doc["expectation_matrices"],
        fitted=doc["fitted"],
        group_vector=doc["group_vector"],
        ranking=doc["ranking"],
        ties=doc["ties"],
        warnings=doc.get("warnings", []),
    )


def save_session(session: Session, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(session_to_dict(session)))


def load_session(path) -> Session:
    with open(path, encoding="utf-8") as fh:
        return validate_session(json.load(fh))


def save_report(report: DecisionReport, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(report_to_dict(report)))


def load_report(path) -> DecisionReport:
    with open(path, encoding="utf-8") as fh:
        return report_from_dict(json.load(fh))


def with_overrides(session: Session, eta: float | None = None,
                   alpha: float | None = None) -> Session:
    """Copy a session with replacement parameters, re-validated."""
    changes = {}
    if eta is not None:
        if not 0.0 <= eta <= 1.0:
            raise ValidationError(f"eta must lie in [0, 1], got {eta}")
        changes["eta"] = float(eta)
    if alpha is not None:
        if not (math.isfinite(alpha) and alpha != 0):
            raise ValidationError(f"alpha must be a nonzero finite number, got {alpha}")
        changes["alpha"] = float(alpha)
    return replace(session, **changes) if changes else session
