import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import evenartin.decide as decide_module  # noqa: E402
from helpers import ACCEPTANCE, YES_RECORD, independent_verify, report  # noqa: E402


@pytest.fixture(autouse=True, scope="session")
def record_positive_verdicts():
    # every positive verdict is re-checked at the end through an independent
    # route (generator substitution instead of the letterwise formulas)
    original = decide_module._yes

    def recording(u, v, w, phi, trace, lam=None):
        verdict = original(u, v, w, phi, trace, lam)
        YES_RECORD.append((u, v, w, phi))
        return verdict

    decide_module._yes = recording
    yield
    decide_module._yes = original


def pytest_sessionfinish(session, exitstatus):
    bad = sum(not independent_verify(*rec) for rec in YES_RECORD)
    total = len(YES_RECORD)
    session.config._yes_summary = (total, bad)
    if 4 in ACCEPTANCE:
        passed, _ = ACCEPTANCE[4]
        report(4, passed and bad == 0, f"{total - bad}/{total} positive verdicts of the whole session re-verified")
    if bad and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    tr = terminalreporter
    if ACCEPTANCE:
        tr.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            passed, detail = ACCEPTANCE[number]
            tr.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
    total, bad = getattr(config, "_yes_summary", (len(YES_RECORD), 0))
    tr.write_line(f"positive verdicts re-verified over the whole session: {total - bad}/{total}")
