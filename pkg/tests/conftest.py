from pathlib import Path

import pytest

from gradedphi.suite.corpus import default_corpus, extended_corpus

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


@pytest.fixture(scope="session")
def extended():
    return extended_corpus()


@pytest.fixture
def data_dir():
    return DATA
