import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = getattr(item.function, "criterion", None)
    if crit is not None and rep.when == "call":
        rep.user_properties.append(("criterion", crit))


def pytest_terminal_summary(terminalreporter):
    rows = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            for name, crit in getattr(rep, "user_properties", []):
                if name == "criterion":
                    rows.append((crit[0], "PASS" if rep.passed else "FAIL", crit[1]))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, status, text in sorted(rows):
        terminalreporter.write_line(f"AC{num:02d} {status}  {text}")
