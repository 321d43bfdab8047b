"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Run standalone with ``python tests/test_acceptance.py`` or through pytest,
where the lines appear in the terminal summary.
"""
import sys
import time

import pytest

from pittka.acceptance import CRITERIA, RunConfig, VerificationReport, criterion_verdicts, run_criterion

LINES = {}


def _run(n):
    t0 = time.time()
    cases = run_criterion(n, RunConfig(criteria=(n,)))
    ok, count, bad = criterion_verdicts(VerificationReport("acceptance", cases))[n]
    line = f"criterion {n} ({CRITERIA[n]}): {'PASS' if ok else 'FAIL'} [{count} cases, {time.time() - t0:.1f} s]"
    details = []
    for c in cases:
        if not (c.passed and c.error is None):
            details.append(f"  {c.id}: expected {c.expected}, got {c.actual}, tol {c.tolerance}"
                           + (f", error {c.error}" if c.error else ""))
    return ok, line, details


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, line, details = _run(n)
    LINES[n] = "\n".join([line] + details)
    print(LINES[n])
    assert ok, LINES[n]


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        ok, line, details = _run(n)
        print("\n".join([line] + details), flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
