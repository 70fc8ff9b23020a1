"""Acceptance gate: one test per criterion, each printing a single
PASS/FAIL line. Golden values come from the bundled reference dataset;
random suites use fixed seeds so every run checks the same cases."""

import math
import random
import sys

import numpy as np
import pytest

from twodulv import fixtures
from twodulv.aggregation import dulgwa
from twodulv.consensus import ExpectationMatrix, fit_preference, group_preference
from twodulv.core import (LinguisticScale, dulv, dulv_add, dulv_mul,
                          dulv_scale, expectation, hamming_distance,
                          uncertainty_degree)
from twodulv.pipeline import (canonical_json, load_session, report_to_dict,
                              run_pipeline, save_session)
from twodulv.weighting import combined_weights, deviation_weights


def verdict(n, ok, detail):
    # write through pytest's capture so the line lands in plain `pytest` output
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}", file=sys.__stdout__)
    assert ok, f"criterion {n}: {detail}"


def grid_hits(session, tables, fn, tol=0.001):
    hits, total, misses = 0, 0, []
    for r in session.rounds:
        printed = tables[str(r.index)]
        for e in session.experts:
            for j, a in enumerate(session.alternatives):
                total += 1
                if abs(fn(r.entries[e][a], session.scale) - printed[e][j]) <= tol:
                    hits += 1
                else:
                    misses.append(f"r{r.index}-{e}-{a}")
    return hits, total, misses


class TestAcceptance:
    def test_criterion_1_expectation_reproduction(self, paper_session, paper_values):
        hits, total, misses = grid_hits(paper_session,
                                        paper_values["expectation_tables"], expectation)
        catalogue = {d["id"] for d in fixtures.discrepancies()}
        uncatalogued = [m for m in misses if f"expectation-{m}" not in catalogue]
        ok = hits >= 0.9 * total and not uncatalogued
        verdict(1, ok, f"expectation tables {hits}/{total} within 0.001, "
                       f"uncatalogued misses: {uncatalogued or 'none'}")

    def test_criterion_2_deviation_chain(self, paper_session, paper_values):
        zeta = [sum(paper_values["distance_tables"][str(t)][e][j]
                    for t in (1, 2, 3) for j in range(5))
                for e in paper_session.experts]
        l2 = deviation_weights(zeta)
        expected = (0.306, 0.227, 0.235, 0.232)
        diff = max(abs(a - b) for a, b in zip(l2, expected))
        verdict(2, diff <= 0.001,
                f"lambda2 {[round(x, 3) for x in l2]}, max error {diff:.5f}")

    def test_criterion_3_combined_weights(self):
        # published weights are rounded; renormalize before blending
        def renorm(v):
            s = sum(v)
            return [x / s for x in v]

        l1 = renorm([0.272, 0.301, 0.189, 0.237])
        l2 = renorm([0.306, 0.227, 0.235, 0.232])
        lam = combined_weights(l1, l2, 0.4).combined
        expected = (0.292, 0.257, 0.217, 0.234)
        diff = max(abs(a - b) for a, b in zip(lam, expected))
        verdict(3, diff <= 0.001,
                f"lambda {[round(x, 3) for x in lam]}, max error {diff:.5f}")

    def test_criterion_4_vector_fitting(self, paper_session, paper_values):
        worst = 0.0
        ok = True
        for e in paper_session.experts:
            f = fit_preference(ExpectationMatrix(e, tuple(
                tuple(row) for row in paper_values["step8_matrices"][e])))
            worst = max(worst, max(abs(a - b) for a, b in
                                   zip(f.vector, paper_values["fitted_vectors"][e])))
            ok &= abs(float(np.linalg.norm(f.vector)) - 1.0) <= 1e-9
            ok &= f.residual <= 1e-8
        ok &= worst <= 0.005
        verdict(4, ok, f"max component error {worst:.4f}, unit norm and "
                       f"residual bounds hold")

    def test_criterion_5_group_result(self, paper_session, paper_values):
        expected_vec = paper_values["group_vector"]
        expected_rank = paper_values["ranking"]

        # from the published intermediates
        fitted = [fit_preference(ExpectationMatrix(e, tuple(
            tuple(row) for row in paper_values["step8_matrices"][e])))
            for e in paper_session.experts]
        res = group_preference(fitted, paper_values["lambda_combined"],
                               paper_session.alternatives)
        d1 = max(abs(a - b) for a, b in zip(res.group_vector, expected_vec))
        ok = d1 <= 0.005 and list(res.ranking) == expected_rank

        # and end to end
        rep = run_pipeline(paper_session)
        d2 = max(abs(a - b) for a, b in zip(rep.group_vector, expected_vec))
        ok = ok and d2 <= 0.005 and rep.ranking == expected_rank
        verdict(5, ok, f"group vector errors {d1:.4f} (intermediates) / "
                       f"{d2:.4f} (end to end), ranking {' > '.join(rep.ranking)}")

    def test_criterion_6_uncertainty_reproduction(self, paper_session, paper_values):
        hits, total, misses = grid_hits(paper_session, paper_values["beta_tables"],
                                        uncertainty_degree)
        catalogue = {d["id"] for d in fixtures.discrepancies()}
        uncatalogued = [m for m in misses if f"beta-{m}" not in catalogue]
        ok = hits >= 0.85 * total and not uncatalogued
        verdict(6, ok, f"uncertainty tables {hits}/{total} within 0.001, "
                       f"uncatalogued misses: {uncatalogued or 'none'}")

    def test_criterion_7_property_suites(self):
        rng = random.Random(20260823)
        scale = LinguisticScale(7, 5)
        failures = []

        def rand_dulv(jlo=0.0):
            a = rng.uniform(jlo, 6.0)
            b = rng.uniform(a, 6.0)
            c = rng.uniform(0.0, 4.0)
            d = rng.uniform(c, 4.0)
            return dulv(a, b, c, d)

        # distance axioms on 10^4 random triples
        bad = 0
        for _ in range(10_000):
            s1, s2, s3 = rand_dulv(), rand_dulv(), rand_dulv()
            d12 = hamming_distance(s1, s2, scale)
            d21 = hamming_distance(s2, s1, scale)
            d11 = hamming_distance(s1, s1, scale)
            tri = (hamming_distance(s1, s2, scale) + hamming_distance(s2, s3, scale)
                   - hamming_distance(s1, s3, scale))
            if not (0.0 <= d12 <= 1.0 + 1e-12 and d12 == d21 and d11 == 0.0
                    and tri >= -1e-12):
                bad += 1
        if bad:
            failures.append(f"distance axioms failed on {bad} triples")

        # aggregation theorems on 10^3 random instances
        bad = 0
        for _ in range(1_000):
            n = rng.randint(2, 5)
            alpha = rng.choice([1.0, 2.0, 0.5, 3.0, -1.0])
            vals = [rand_dulv(jlo=0.1) for _ in range(n)]
            raw = [rng.uniform(0.05, 1.0) for _ in range(n)]
            ws = [w / sum(raw) for w in raw]
            agg = dulgwa(vals, ws, alpha, scale)
            # idempotency
            same = dulgwa([vals[0]] * n, ws, alpha, scale)
            idem = (math.isclose(same.judgment.lo, vals[0].judgment.lo,
                                 rel_tol=1e-9, abs_tol=1e-9)
                    and math.isclose(same.judgment.hi, vals[0].judgment.hi,
                                     rel_tol=1e-9, abs_tol=1e-9)
                    and same.reliability == vals[0].reliability)
            # commutativity under a joint permutation of values and weights
            perm = list(range(n))
            rng.shuffle(perm)
            p = dulgwa([vals[i] for i in perm], [ws[i] for i in perm], alpha, scale)
            comm = (math.isclose(p.judgment.lo, agg.judgment.lo, rel_tol=1e-9)
                    and math.isclose(p.judgment.hi, agg.judgment.hi, rel_tol=1e-9)
                    and p.reliability == agg.reliability)
            # componentwise monotonicity
            bumped = [dulv(v.judgment.lo, min(6.0, v.judgment.hi + rng.uniform(0, 0.5)),
                           v.reliability.lo, min(4.0, v.reliability.hi + rng.uniform(0, 0.5)))
                      for v in vals]
            up = dulgwa(bumped, ws, alpha, scale)
            mono = (up.judgment.lo >= agg.judgment.lo - 1e-12
                    and up.judgment.hi >= agg.judgment.hi - 1e-12
                    and up.reliability.lo >= agg.reliability.lo - 1e-12
                    and up.reliability.hi >= agg.reliability.hi - 1e-12)
            # bounded above by the best input
            bound = expectation(agg, scale) <= max(expectation(v, scale)
                                                   for v in vals) + 1e-9
            if not (idem and comm and mono and bound):
                bad += 1
        if bad:
            failures.append(f"aggregation theorems failed on {bad} instances")

        # algebra laws, exact on integer subscripts
        bad = 0
        for _ in range(1_000):
            def int_dulv():
                a = rng.randint(0, 5)
                c = rng.randint(0, 3)
                return dulv(a, rng.randint(a, 6), c, rng.randint(c, 4))

            s1, s2, s3 = int_dulv(), int_dulv(), int_dulv()
            lam1, lam2 = float(rng.randint(0, 5)), float(rng.randint(0, 5))
            laws = (
                dulv_add(s1, s2) == dulv_add(s2, s1),
                dulv_mul(s1, s2) == dulv_mul(s2, s1),
                dulv_add(dulv_add(s1, s2), s3) == dulv_add(s1, dulv_add(s2, s3)),
                dulv_mul(dulv_mul(s1, s2), s3) == dulv_mul(s1, dulv_mul(s2, s3)),
                dulv_mul(s1, dulv_add(s2, s3))
                == dulv_add(dulv_mul(s1, s2), dulv_mul(s1, s3)),
                dulv_scale(lam1, dulv_add(s1, s2))
                == dulv_add(dulv_scale(lam1, s1), dulv_scale(lam1, s2)),
                dulv_scale(lam1 + lam2, s1)
                == dulv_add(dulv_scale(lam1, s1), dulv_scale(lam2, s1)),
            )
            if not all(laws):
                bad += 1
        if bad:
            failures.append(f"algebra laws failed on {bad} instances")

        # fitting against the dense symmetric eigensolver
        nprng = np.random.default_rng(20260823)
        bad = 0
        worst_dev = 0.0
        for _ in range(100):
            rows = nprng.uniform(0.01, 1.0,
                                 size=(nprng.integers(2, 8), nprng.integers(2, 8)))
            f = fit_preference(ExpectationMatrix("e", tuple(map(tuple, rows))))
            F = rows.T @ rows
            vals, vecs = np.linalg.eigh(F)
            ref = vecs[:, -1]
            if ref.sum() < 0:
                ref = -ref
            dev = float(np.abs(np.asarray(f.vector) - ref).max())
            worst_dev = max(worst_dev, dev)
            if dev > 1e-8 or abs(f.eigenvalue - vals[-1]) > 1e-8:
                bad += 1
                continue
            # local maximality of v^T F v on the unit sphere
            v = np.asarray(f.vector)
            for _ in range(10):
                u = nprng.normal(size=v.shape)
                w = v + 1e-3 * u / np.linalg.norm(u)
                w /= np.linalg.norm(w)
                if float(w @ F @ w) > f.eigenvalue + 1e-12:
                    bad += 1
                    break
        if bad:
            failures.append(f"eigen fitting failed on {bad} matrices")

        # 10^3 unit perturbations around one representative optimum
        rows = nprng.uniform(0.01, 1.0, size=(4, 5))
        f = fit_preference(ExpectationMatrix("e", tuple(map(tuple, rows))))
        F = rows.T @ rows
        v = np.asarray(f.vector)
        bad = 0
        for _ in range(1_000):
            u = nprng.normal(size=v.shape)
            w = v + 1e-3 * u / np.linalg.norm(u)
            w /= np.linalg.norm(w)
            if float(w @ F @ w) > f.eigenvalue + 1e-12:
                bad += 1
        if bad:
            failures.append(f"fit objective not locally maximal at {bad} perturbations")

        verdict(7, not failures, "; ".join(failures) or
                "distance axioms, aggregation theorems, algebra laws, "
                "eigen oracle, local maximality all hold")

    def test_criterion_8_determinism_and_persistence(self, paper_session, tmp_path):
        a = canonical_json(report_to_dict(run_pipeline(paper_session)))
        b = canonical_json(report_to_dict(run_pipeline(paper_session)))
        path = tmp_path / "session.json"
        save_session(paper_session, path)
        round_tripped = load_session(path) == paper_session
        verdict(8, a == b and round_tripped,
                f"reports byte-identical: {a == b}, "
                f"session round-trips exactly: {round_tripped}")
