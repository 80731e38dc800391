from __future__ import annotations

from pathlib import Path

import pytest

from memorec.ecore import parse_ecore_xmi
from memorec.jsonmodel import parse_json_model

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def web_ecore_bytes() -> bytes:
    return (FIXTURES / "web.ecore").read_bytes()


@pytest.fixture(scope="session")
def web_json_bytes() -> bytes:
    return (FIXTURES / "web.json").read_bytes()


@pytest.fixture(scope="session")
def web_model(web_ecore_bytes):
    return parse_ecore_xmi(web_ecore_bytes, "fixtures/web.ecore")


@pytest.fixture(scope="session")
def web_model_json(web_json_bytes):
    return parse_json_model(web_json_bytes, "fixtures/web.json")
