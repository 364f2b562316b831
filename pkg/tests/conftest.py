import pytest

from relit import load_fixture
from relit.krull import catalog_for


@pytest.fixture(params=["L1", "L2", "L3", "L4"])
def fixture_name(request):
    return request.param


@pytest.fixture
def alg(fixture_name):
    return load_fixture(fixture_name)


@pytest.fixture
def cat(alg):
    return catalog_for(alg)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # never touch the user's cache directory
    monkeypatch.setenv("RELIT_CACHE_DIR", str(tmp_path / "cache"))
