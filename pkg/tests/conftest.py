from __future__ import annotations

import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from noaverify.extraction import EchoFormalizer
from noaverify.ontology import load_ontology
from noaverify.rulestore import load_rules
from noaverify.similarity import offline_matcher
from noaverify.verify import load_tables

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = Path(__file__).resolve().parent / "fixtures"
DATASET = ROOT / "datasets" / "synthetic43"

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def onto():
    return load_ontology()


@pytest.fixture(scope="session")
def vocab(onto):
    return dict(onto.vocabulary())


@pytest.fixture(scope="session")
def store(onto):
    return load_rules(None, onto.vocabulary())


@pytest.fixture(scope="session")
def scenario_store(onto):
    return load_rules(FIXTURES / "scenario_rules.json", onto.vocabulary())


@pytest.fixture(scope="session")
def provider():
    return offline_matcher()


@pytest.fixture(scope="session")
def formalizer():
    return EchoFormalizer()


@pytest.fixture(scope="session")
def tables():
    return load_tables()
