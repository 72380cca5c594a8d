"""ontoforge: a desk-scale collaborative OWL ontology editing service."""

__version__ = "0.1.0"
