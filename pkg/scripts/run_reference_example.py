#!/usr/bin/env python
"""Run the bundled reference dataset end to end and print the rendered
report followed by the golden-value checks."""

import sys

from twodulv import fixtures
from twodulv.cli import render_report
from twodulv.reproduce import run_checks

result = run_checks()
print(render_report(result["report"]), end="")
print()
for name, ok, detail in result["checks"]:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
print(f"catalogued publication discrepancies: {len(result['discrepancies'])}")
sys.exit(0 if result["passed"] else 1)
