from __future__ import annotations

import json
import pathlib

import pytest
from fastapi.testclient import TestClient

from uttergen_sidecar import create_app

SCHEMA_PATH = (
    pathlib.Path(__file__).resolve().parent.parent.parent / "protocol" / "wire_schema.json"
)


@pytest.fixture(scope="session")
def wire_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))


@pytest.fixture()
def app():
    return create_app()


@pytest.fixture()
def client(app) -> TestClient:
    # raise_server_exceptions off so 500 bodies are observable
    return TestClient(app, raise_server_exceptions=False)
