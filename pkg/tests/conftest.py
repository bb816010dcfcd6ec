import pytest

from helpers import alice_pair


@pytest.fixture
def alice():
    """Two tiny mirrored ontologies: alice/bob/paris vs a2/b2/p2."""
    return alice_pair()
