import functools

import pytest
from hypothesis import HealthCheck, settings

from ihforms.complex import CORPUS, generate

settings.register_profile(
    "repo", deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@functools.lru_cache(maxsize=None)
def corpus_complex(name):
    return generate(name)


@pytest.fixture(params=CORPUS)
def corpus(request):
    return corpus_complex(request.param)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid or rep.when not in ("call", "setup"):
                continue
            if outcome == "passed" and rep.when != "call":
                continue
            num = int(nodeid.split("test_criterion_")[1].split("_")[0])
            lines.append((num, "PASS" if outcome == "passed" else "FAIL", rep.duration))
    if not lines:
        return
    from test_acceptance import TITLES

    terminalreporter.section("acceptance criteria")
    for num, verdict, secs in sorted(lines):
        terminalreporter.write_line(f"{verdict} criterion {num}: {TITLES[num]} ({secs:.1f}s)")
