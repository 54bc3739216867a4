import numpy as np
import pytest

from beurling_kit.catalog import catalog_weights, resolve_weight


@pytest.fixture(scope="session")
def catalog_triples():
    """All built-in (group, entry, weight record) cells, resolved once."""
    out = []
    for entry in catalog_weights():
        group, record = resolve_weight(entry)
        out.append((group, entry, record))
    return out


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
