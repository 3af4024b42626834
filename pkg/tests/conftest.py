import random

import pytest

from esmc import rsa


@pytest.fixture(scope="session")
def keypair_512():
    """One deterministic 512-bit keypair shared across the suite."""
    return rsa.generate_keypair(512, rng=random.Random(0xE5D512))


@pytest.fixture(scope="session")
def fig3_keypair():
    """The small worked-example keypair: p=103, q=107, e=5."""
    return rsa.keygen(103, 107, 5)
