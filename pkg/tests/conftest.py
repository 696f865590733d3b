import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.algebra.catalog import chain, circle_c4, diamond  # noqa: E402
from src.algebra.poset import save_poset  # noqa: E402


@pytest.fixture
def diamond_poset():
    return diamond()


@pytest.fixture
def chain3():
    return chain(3)


@pytest.fixture
def circle():
    return circle_c4()


@pytest.fixture
def poset_files(tmp_path, diamond_poset, chain3, circle):
    files = {}
    for name, P in (('diamond', diamond_poset), ('chain', chain3), ('circle', circle)):
        path = tmp_path / f"{name}.json"
        save_poset(P, path)
        files[name] = str(path)
    return files
