import pytest

import fixtures
from sawmatch.ontology import ClassGraph


@pytest.fixture(scope="session")
def desire_graph():
    """The four-taxonomy fixture hierarchy used across engine tests."""
    return ClassGraph.from_axioms(fixtures.DESIRE_AXIOMS)
