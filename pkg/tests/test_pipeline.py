import json

import pytest

from twodulv import fixtures
from twodulv.errors import ValidationError
from twodulv.pipeline import (canonical_json, load_report, load_session,
                              parse_round_csv, report_from_dict,
                              report_to_dict, run_pipeline, save_report,
                              save_session, session_to_dict, validate_session,
                              with_overrides)


def minimal_doc(**overrides):
    doc = {
        "schema": "gdm/1",
        "scale": {"l": 7, "z": 5},
        "eta": 0.4,
        "alpha": 1.0,
        "experts": ["e1", "e2"],
        "alternatives": ["a1", "a2"],
        "rounds": [
            {"index": 1, "entries": {
                "e1": {"a1": [5, 5, 2, 3], "a2": [2, 3, 3, 3]},
                "e2": {"a1": [3, 4, 2, 3], "a2": [5, 5, 3, 3]},
            }},
        ],
    }
    doc.update(overrides)
    return doc


class TestValidateSession:
    def test_ok(self):
        s = validate_session(minimal_doc())
        assert s.experts == ("e1", "e2")
        assert s.rounds[0].entries["e1"]["a2"].judgment.hi == 3
        assert s.warnings == ()

    def test_schema_required(self):
        with pytest.raises(ValidationError):
            validate_session(minimal_doc(schema="gdm/2"))

    def test_collects_every_problem(self):
        doc = minimal_doc(eta=1.5, alternatives=["a1", "a2", "a3"])
        with pytest.raises(ValidationError) as ei:
            validate_session(doc)
        msgs = "\n".join(ei.value.problems)
        assert "eta" in msgs
        assert "missing cell" in msgs
        assert msgs.count("missing cell") == 2  # a3 absent for both experts

    def test_reversed_interval_warns(self):
        doc = minimal_doc()
        doc["rounds"][0]["entries"]["e1"]["a1"] = [5, 3, 2, 3]
        s = validate_session(doc)
        assert any("reversed interval" in w for w in s.warnings)
        assert s.rounds[0].entries["e1"]["a1"].judgment.lo == 3

    def test_out_of_scale_cell(self):
        doc = minimal_doc()
        doc["rounds"][0]["entries"]["e1"]["a1"] = [5, 9, 2, 3]
        with pytest.raises(ValidationError) as ei:
            validate_session(doc)
        assert any("exceeds scale bound 6" in p for p in ei.value.problems)

    def test_round_indices_contiguous(self):
        doc = minimal_doc()
        doc["rounds"][0]["index"] = 2
        with pytest.raises(ValidationError):
            validate_session(doc)

    def test_printed_dataset_carries_warnings(self):
        s = fixtures.paper_printed_session()
        assert any("reversed interval" in w for w in s.warnings)


class TestRoundCsv:
    def test_parse(self):
        text = "expert,alternative,a,b,c,d\ne1,a1,5,5,2,3\ne1,a2,2,3,3,3\n"
        entries = parse_round_csv(text)
        assert entries == {"e1": {"a1": [5.0, 5.0, 2.0, 3.0],
                                  "a2": [2.0, 3.0, 3.0, 3.0]}}

    def test_bad_header(self):
        with pytest.raises(ValidationError):
            parse_round_csv("who,what,a,b,c,d\ne1,a1,1,1,1,1\n")

    def test_bad_number(self):
        with pytest.raises(ValidationError) as ei:
            parse_round_csv("expert,alternative,a,b,c,d\ne1,a1,x,1,1,1\n")
        assert "line 2" in str(ei.value)


class TestRunPipeline:
    def test_reference_run(self, paper_session):
        rep = run_pipeline(paper_session)
        assert rep.ranking == ["a5", "a1", "a4", "a3", "a2"]
        assert sum(rep.lambda_combined) == pytest.approx(1.0)
        assert len(rep.uncertainty_grids) == 3
        assert rep.fitted[0]["residual"] <= 1e-8

    def test_no_rounds(self):
        doc = minimal_doc(rounds=[])
        with pytest.raises(ValidationError):
            run_pipeline(validate_session(doc))

    def test_single_round_deviation_is_uniform(self):
        rep = run_pipeline(validate_session(minimal_doc()))
        # one round: everyone sits on the aggregate, zero-score rule splits evenly
        assert rep.zeta == [0.0, 0.0]
        assert rep.lambda2 == [0.5, 0.5]


class TestPersistence:
    def test_canonical_json_floats(self):
        assert canonical_json({"x": 0.1 + 0.2}) == '{"x":0.3}\n'
        assert canonical_json([1.0, 2]) == "[1.0,2]\n"
        assert canonical_json({"b": 1, "a": 2}) == '{"a":2,"b":1}\n'

    def test_session_round_trip(self, tmp_path, paper_session):
        p = tmp_path / "s.json"
        save_session(paper_session, p)
        again = load_session(p)
        assert again == paper_session

    def test_report_round_trip(self, tmp_path, paper_session):
        rep = run_pipeline(paper_session)
        p = tmp_path / "r.json"
        save_report(rep, p)
        loaded = load_report(p)
        assert canonical_json(report_to_dict(loaded)) == canonical_json(report_to_dict(rep))

    def test_report_schema_checked(self):
        with pytest.raises(ValidationError):
            report_from_dict({"schema": "nope"})

    def test_session_to_dict_revalidates(self, paper_session):
        doc = session_to_dict(paper_session)
        assert validate_session(doc) == paper_session


class TestOverrides:
    def test_apply(self, paper_session):
        s = with_overrides(paper_session, eta=0.7, alpha=2.0)
        assert (s.eta, s.alpha) == (0.7, 2.0)
        assert with_overrides(paper_session) is paper_session

    def test_validation(self, paper_session):
        with pytest.raises(ValidationError):
            with_overrides(paper_session, eta=-0.1)
        with pytest.raises(ValidationError):
            with_overrides(paper_session, alpha=0.0)
