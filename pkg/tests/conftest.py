import pytest

from sumprod.config import configure


@pytest.fixture(autouse=True)
def default_settings():
    """Every test starts from the default settings, whatever the previous one configured."""
    configure()
    yield
    configure()
