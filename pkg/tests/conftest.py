import json
import sys
from pathlib import Path

import pytest

HERE = Path(__file__).resolve().parent
DATA = HERE / "data"
sys.path.insert(0, str(HERE))


def load_json(name):
    return json.loads((DATA / name).read_text())


@pytest.fixture(scope="session")
def oracle_corpus():
    return load_json("oracle_corpus.json")["sets"]


@pytest.fixture(scope="session")
def certified_seeds():
    return load_json("certified_seeds.json")["sets"]


@pytest.fixture(scope="session")
def pinned():
    return load_json("pinned_values.json")
