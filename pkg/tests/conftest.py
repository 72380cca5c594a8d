from __future__ import annotations

from pathlib import Path

import pytest

from ontoforge.core import Iri, OntologyDocument, parse_ontology

FIXTURES = Path(__file__).parent / "fixtures"

AIR = "http://example.org/air#"
AIRCRAFT = Iri(AIR + "Aircraft")
AIRBUS_AIRCRAFT = Iri(AIR + "AirbusAircraft")
AIRBUS_A320 = Iri(AIR + "AirbusA320")
AIRBUS_BELUGA = Iri(AIR + "AirbusBeluga")


@pytest.fixture(scope="session")
def air_text() -> str:
    return (FIXTURES / "air.ofn").read_text("utf-8")


@pytest.fixture(scope="session")
def air_doc(air_text) -> OntologyDocument:
    return parse_ontology(air_text)
