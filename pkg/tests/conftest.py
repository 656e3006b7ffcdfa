import pytest

from qelectra.pipeline import assemble, shipped_geometry

SHIPPED = ["h2", "lih", "h2o", "nh3", "ch4", "co2"]


@pytest.fixture(scope="session")
def assembled():
    """Shipped molecules assembled once; several test modules reuse them."""
    cache = {}

    def get(key):
        if key not in cache:
            cache[key] = assemble(shipped_geometry(key))
        return cache[key]

    return get
