from __future__ import annotations

from pathlib import Path

import pytest

from talentgraph.graph import KnowledgeGraph, ScoringConfig
from talentgraph.lexicon import load_sentiment_gazetteer, load_skill_lexicon
from talentgraph.parser import parse_resume

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS_DIR = FIXTURES / "corpus"
LEXICON_FILE = FIXTURES / "lexicon.json"
GAZETTEER_FILE = FIXTURES / "gazetteer.json"
GOLD_FILE = FIXTURES / "gold.json"


@pytest.fixture(scope="session")
def lexicon():
    return load_skill_lexicon(LEXICON_FILE)


@pytest.fixture(scope="session")
def gazetteer():
    return load_sentiment_gazetteer(GAZETTEER_FILE)


def parse_corpus(lexicon):
    records = []
    for seed, path in enumerate(sorted(CORPUS_DIR.glob("*.txt"))):
        record, _ = parse_resume(path.read_text(encoding="utf-8"), lexicon, seed)
        records.append(record)
    return records


@pytest.fixture(scope="session")
def corpus_records(lexicon):
    return parse_corpus(lexicon)


def build_graph(records, lexicon, gazetteer, config=None):
    graph = KnowledgeGraph(config or ScoringConfig())
    for record in records:
        graph.add_resume(record, lexicon, gazetteer)
    return graph


@pytest.fixture()
def corpus_graph(corpus_records, lexicon, gazetteer):
    return build_graph(corpus_records, lexicon, gazetteer)
