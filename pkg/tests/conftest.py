# tests/conftest.py
import json
from pathlib import Path
from typing import Dict

import pytest

from ltsplit.corpus import CorpusItem, build_corpus
from ltsplit.leibniz_embedding import masa_from_pairs, standard_embedding
from ltsplit.split_decomposition import RootDecomposition, decompose
from ltsplit.triple_core import TripleSystem

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = REPO_ROOT / "sample_data" / "corpus"
GOLDEN_PATH = Path(__file__).resolve().parent / "golden" / "annotations.json"


def decomposition_of(item: CorpusItem) -> RootDecomposition:
    T = item.system
    E = standard_embedding(T)
    return decompose(T, E, masa_from_pairs(E, item.masa_pairs or ()))


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def golden():
    return json.loads(GOLDEN_PATH.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def decompositions(corpus) -> Dict[str, RootDecomposition]:
    return {
        name: decomposition_of(item)
        for name, item in corpus.items()
        if isinstance(item.system, TripleSystem)
    }


@pytest.fixture(scope="session")
def sl2_decomposition(decompositions):
    return decompositions["c3_sl2_derived"]


@pytest.fixture(scope="session")
def hs_standard_decomposition(decompositions):
    return decompositions["c6_hs_standard_derived"]
