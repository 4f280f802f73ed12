import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from palc import oracle
from palc.parser import load_kb

# every witness and certificate handed out during tests is verified
oracle.CHECK_WITNESSES = True

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=300, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

KBS = Path(__file__).resolve().parent.parent / "kbs"


def kb_text(name: str) -> str:
    return (KBS / name).read_text()


@pytest.fixture(scope="session")
def birds():
    return load_kb(kb_text("birds.palc"))


@pytest.fixture(scope="session")
def birds_v1():
    return load_kb(kb_text("birds_v1.palc"))


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
