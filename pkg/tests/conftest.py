from __future__ import annotations

from pathlib import Path

import pytest

from ajudge.records import load_corpus

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def var_fixture():
    return load_corpus(DATA_DIR / "var_fixture.jsonl")


@pytest.fixture(scope="session")
def desk_corpus():
    return load_corpus(DATA_DIR / "desk_corpus.jsonl")


@pytest.fixture(scope="session")
def correct50():
    return load_corpus(DATA_DIR / "correct50.jsonl")
