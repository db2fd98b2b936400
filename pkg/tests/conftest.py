from __future__ import annotations

import json
import pathlib

import pytest

from uttergen.backends import BackendSuite, reference_suite
from uttergen.lexicon import ClosedClassLexicon, LexiconSuite

SCHEMA_PATH = pathlib.Path(__file__).parent.parent / "protocol" / "wire_schema.json"


@pytest.fixture(scope="session")
def suite() -> BackendSuite:
    return reference_suite()


@pytest.fixture(scope="session")
def lexicons() -> LexiconSuite:
    return LexiconSuite.packaged()


@pytest.fixture(scope="session")
def closed_class() -> ClosedClassLexicon:
    return ClosedClassLexicon.default()


@pytest.fixture(scope="session")
def wire_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
