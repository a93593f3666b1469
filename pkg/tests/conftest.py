from pathlib import Path

import pytest

from multisum.corpus import load_docsets
from multisum.lexsem import load_embeddings, load_lexicon

REPO = Path(__file__).resolve().parents[1]
DATA = REPO / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def store():
    return load_embeddings(DATA / "fixture_embeddings.txt")


@pytest.fixture(scope="session")
def lex():
    return load_lexicon(DATA / "derivational_lexicon.tsv")


@pytest.fixture(scope="session")
def fixture_docsets():
    return load_docsets(DATA / "fixture_docsets.jsonl")
