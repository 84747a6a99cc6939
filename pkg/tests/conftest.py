import pytest

from reflekt.services.group import GroupKey, get_group
from reflekt.settings import settings


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path):
    """Point the cache at a temp dir and undo any settings changes made by a test."""
    saved = settings.model_dump()
    settings.cache_dir = str(tmp_path / "cache")
    yield
    for name, value in saved.items():
        setattr(settings, name, value)


@pytest.fixture
def cache_dir(tmp_path):
    return tmp_path / "cache"


@pytest.fixture(scope="session")
def b2():
    """G(2,1,2), the dihedral group of order 8."""
    return get_group(GroupKey(2, 1, 2))


@pytest.fixture(scope="session")
def klein():
    """G(2,2,2)."""
    return get_group(GroupKey(2, 2, 2))
