import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT / "src"))

from exlen.services.presentation import load  # noqa: E402

CORPUS = ROOT / "corpus"


@pytest.fixture
def corpus_dir():
    return CORPUS


@pytest.fixture
def load_corpus():
    def _load(name):
        return load(CORPUS / f"{name}.json")
    return _load


@pytest.fixture
def a327(load_corpus):
    return load_corpus("a327")


@pytest.fixture
def ka2(load_corpus):
    return load_corpus("mod_ka2")


@pytest.fixture
def dual_numbers(load_corpus):
    return load_corpus("dual_numbers")
