import pytest

from weylpoly.domain.config import Family
from weylpoly.domain.root_system import AlgebraId, build_root_system

@pytest.fixture
def a1():
    return build_root_system(AlgebraId(Family.A, 1))

@pytest.fixture
def a2():
    return build_root_system(AlgebraId(Family.A, 2))

@pytest.fixture
def a3():
    return build_root_system(AlgebraId(Family.A, 3))

@pytest.fixture
def c2():
    return build_root_system(AlgebraId(Family.C2, 2))

@pytest.fixture
def g2():
    return build_root_system(AlgebraId(Family.G2, 2))

@pytest.fixture
def home_dir(tmp_path, monkeypatch):
    """Point ~ at a temporary directory and clear the rank override."""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.delenv("WEYLPOLY_MAX_RANK", raising=False)
    return tmp_path
