import os
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

_START = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
    terminalreporter.write_line(f"suite wall time {time.perf_counter() - _START:.1f}s (budget 60s)")
