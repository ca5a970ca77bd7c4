"""Shared fixtures: the synthetic corpus, vocabularies, and the stub server."""

from __future__ import annotations

import pytest

from corpusgen import write_corpus
from stub_server import StubEmbeddingServer

import hecele


@pytest.fixture(scope="session")
def corpus_path(tmp_path_factory) -> str:
    """1.3 MB deterministic synthetic corpus, generated once per session."""
    path = tmp_path_factory.mktemp("corpus") / "synthetic.txt"
    write_corpus(str(path))
    return str(path)


@pytest.fixture(scope="session")
def corpus_vocab(corpus_path) -> hecele.Vocab:
    with open(corpus_path, encoding="utf-8") as f:
        return hecele.build_vocab(line.rstrip("\n") for line in f)


@pytest.fixture(scope="session")
def corpus_vocab_path(corpus_vocab, tmp_path_factory) -> str:
    path = tmp_path_factory.mktemp("vocab") / "vocab.json"
    hecele.save_vocab(corpus_vocab, str(path))
    return str(path)


TINY_CORPUS = [
    "Atasözleri geçmişten günümüze kadar ulaşan sözlerdir.",
    "Merhaba dünya, bugün hava çok güzel.",
    "İstanbul 1923 yılında başkent değildi.",
]


@pytest.fixture()
def tiny_vocab() -> hecele.Vocab:
    return hecele.build_vocab(TINY_CORPUS)


@pytest.fixture()
def stub_server():
    """Factory for stub embedding servers; everything started is stopped."""
    servers: list[StubEmbeddingServer] = []

    def make(dim: int = 16, behavior: str = "ok") -> StubEmbeddingServer:
        server = StubEmbeddingServer(dim=dim, behavior=behavior).start()
        servers.append(server)
        return server

    yield make
    for server in servers:
        server.stop()
