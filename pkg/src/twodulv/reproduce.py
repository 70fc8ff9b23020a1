"""Reproduction of the published worked example against the bundled
golden values. Returns structured check results; the CLI renders them."""

from __future__ import annotations

import numpy as np

from . import fixtures
from .consensus import ExpectationMatrix, fit_preference
from .core import dulv, expectation, hamming_distance, uncertainty_degree
from .pipeline import run_pipeline
from .weighting import combined_weights, deviation_weights


def _grid_match_count(session, table, fn, tol=0.001):
    """Count cells of the published per-round tables our computed values
    reproduce within tol; return (hits, total, miss keys)."""
    hits, total, misses = 0, 0, []
    for r in session.rounds:
        printed = table[str(r.index)]
        for i, e in enumerate(session.experts):
            for j, a in enumerate(session.alternatives):
                total += 1
                got = fn(r.entries[e][a], session.scale)
                if abs(got - printed[e][j]) <= tol:
                    hits += 1
                else:
                    misses.append(f"r{r.index}-{e}-{a}")
    return hits, total, misses


def run_checks(eta: float | None = None, alpha: float | None = None) -> dict:
    """Run the fixture and compare every published quantity. Each check
    is (name, passed, detail); misses cross-reference the discrepancy
    catalogue shipped with the fixture."""
    session = fixtures.paper_session()
    values = fixtures.paper_values()
    catalogue = {d["id"] for d in fixtures.discrepancies()}
    if eta is not None or alpha is not None:
        from .pipeline import with_overrides
        session = with_overrides(session, eta=eta, alpha=alpha)
    report = run_pipeline(session)
    checks = []

    ehits, etotal, _ = _grid_match_count(session, values["expectation_tables"], expectation)
    checks.append(("expectation tables (>=90% of cells within 0.001)",
                   ehits >= 0.9 * etotal, f"{ehits}/{etotal}"))
    bhits, btotal, bmiss = _grid_match_count(session, values["beta_tables"], uncertainty_degree)
    uncatalogued = [m for m in bmiss if f"beta-{m}" not in catalogue]
    checks.append(("uncertainty tables (>=85% of cells within 0.001)",
                   bhits >= 0.85 * btotal, f"{bhits}/{btotal}"))
    checks.append(("every uncertainty miss catalogued",
                   not uncatalogued, f"uncatalogued: {uncatalogued or 'none'}"))

    # deviation chain from the published distance tables is exact
    zeta = [sum(values["distance_tables"][str(t)][e][j]
                for t in (1, 2, 3) for j in range(5))
            for e in session.experts]
    l2 = deviation_weights(zeta)
    ok = all(abs(a - b) <= 0.001 for a, b in zip(l2, values["lambda2"]))
    checks.append(("lambda2 from published distance tables (0.001)", ok,
                   "[" + ", ".join(f"{x:.3f}" for x in l2) + "]"))

    # published weights are rounded to 3 decimals; renormalize before combining
    def _renorm(vec):
        s = sum(vec)
        return [x / s for x in vec]

    lam = combined_weights(_renorm(values["lambda1"]), _renorm(values["lambda2"]),
                           values["eta"]).combined
    ok = all(abs(a - b) <= 0.001 for a, b in zip(lam, values["lambda_combined"]))
    checks.append(("combined weights from published lambda1/lambda2 (0.001)", ok,
                   "[" + ", ".join(f"{x:.3f}" for x in lam) + "]"))

    # fitted vectors from the published round-vector matrices
    worst = 0.0
    for e in session.experts:
        f = fit_preference(ExpectationMatrix(e, tuple(
            tuple(row) for row in values["step8_matrices"][e])))
        worst = max(worst, max(abs(a - b) for a, b in
                               zip(f.vector, values["fitted_vectors"][e])))
    checks.append(("fitted vectors from published matrices (0.005)",
                   worst <= 0.005, f"max component error {worst:.4f}"))

    sg = np.array(report.group_vector)
    diff = float(np.abs(sg - np.array(values["group_vector"])).max())
    checks.append(("end-to-end group vector (0.005)", diff <= 0.005,
                   f"max component error {diff:.4f}"))
    checks.append(("end-to-end ranking", report.ranking == values["ranking"],
                   " > ".join(report.ranking)))

    return {
        "checks": checks,
        "passed": all(ok for _, ok, _ in checks),
        "report": report,
        "discrepancies": fixtures.discrepancies(),
    }
