"""Bundled reference dataset: the supply-chain evaluation example.

``paper_session`` is the typo-corrected fixture used for golden tests;
``paper_printed_session`` is the dataset exactly as published (including
reversed intervals); ``paper_values`` holds the published intermediate
tables and final results; ``discrepancies`` is the machine-readable
catalogue of places where the published tables contradict each other.
"""

from __future__ import annotations

import json
from importlib import resources

from .pipeline import Session, validate_session


def _load(name: str):
    ref = resources.files("twodulv").joinpath("fixtures", name)
    return json.loads(ref.read_text(encoding="utf-8"))


def paper_session_dict() -> dict:
    return _load("paper_session.json")


def paper_session() -> Session:
    return validate_session(paper_session_dict())


def paper_printed_session_dict() -> dict:
    return _load("paper_printed_session.json")


def paper_printed_session() -> Session:
    return validate_session(paper_printed_session_dict())


def paper_values() -> dict:
    return _load("paper_values.json")


def discrepancies() -> list[dict]:
    return _load("discrepancies.json")
