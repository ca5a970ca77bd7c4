"""Chunk-level dense retrieval evaluation (Recall@k) with pluggable embedders.

Passages are flat-encoded, split into overlapping windows, and embedded one
window at a time; a question is answered correctly when any of its k
highest-cosine windows belongs to the gold passage.  Retrieval is an exact
full scan; ties are broken by lower chunk position so rankings are total and
reproducible.  Two embedders are provided: a deterministic TF-IDF reference
embedder (needs no trained model) and an HTTP client for an external
embedding service.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np
import requests

from .chunking import Chunk, ChunkSpec, chunk_tokens
from .codec import Mode, encode

if TYPE_CHECKING:
    from .vocab import Vocab


class DatasetError(ValueError):
    """Evaluation dataset file is malformed or inconsistent."""


class EmbeddingServiceError(RuntimeError):
    """Base class for embedding backend failures."""


class TransportError(EmbeddingServiceError):
    """The embedding endpoint could not be reached or returned non-2xx."""


class MalformedResponseError(EmbeddingServiceError):
    """The embedding endpoint returned a body outside the wire schema."""


class EmbeddingDimError(EmbeddingServiceError):
    """The embedding endpoint returned vectors of the wrong dimension."""


class EmbeddingValueError(EmbeddingServiceError):
    """The embedding endpoint returned non-finite vector components."""


@dataclass(frozen=True)
class Passage:
    id: object
    text: str


@dataclass(frozen=True)
class Question:
    id: object
    text: str
    passage_id: object


@dataclass(frozen=True)
class EvalDataset:
    passages: list[Passage]
    questions: list[Question]

    def __post_init__(self) -> None:
        passage_ids = [p.id for p in self.passages]
        if len(set(passage_ids)) != len(passage_ids):
            raise DatasetError("duplicate passage ids")
        question_ids = [q.id for q in self.questions]
        if len(set(question_ids)) != len(question_ids):
            raise DatasetError("duplicate question ids")
        known = set(passage_ids)
        for q in self.questions:
            if q.passage_id not in known:
                raise DatasetError(f"question {q.id!r} references unknown passage {q.passage_id!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "EvalDataset":
        try:
            passages = [Passage(p["id"], p["text"]) for p in data["passages"]]
            questions = [Question(q["id"], q["text"], q["passage_id"]) for q in data["questions"]]
        except (KeyError, TypeError) as exc:
            raise DatasetError(f"dataset is missing required fields: {exc}") from exc
        return cls(passages, questions)

    @classmethod
    def from_file(cls, path: str) -> "EvalDataset":
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"not a valid dataset file: {exc}") from exc
        if not isinstance(data, dict):
            raise DatasetError("dataset file must contain a JSON object")
        return cls.from_dict(data)


def cosine(u: Sequence[float], v: Sequence[float]) -> float:
    """Cosine similarity; 0.0 when either vector has zero norm."""
    a = np.asarray(u, dtype=float)
    b = np.asarray(v, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def _normalize_rows(m: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(m, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return m / norms


def mean_pairwise_cosine(vectors) -> float:
    """Mean cosine over all unordered pairs (embedding-collapse diagnostic)."""
    m = np.asarray(vectors, dtype=float)
    if m.ndim != 2 or m.shape[0] < 2:
        raise ValueError("mean_pairwise_cosine needs at least two vectors")
    normed = _normalize_rows(m)
    gram = normed @ normed.T
    iu = np.triu_indices(m.shape[0], k=1)
    return float(gram[iu].mean())


class Embedder:
    """Maps token-id sequences to fixed-dimension vectors, batch order kept."""

    dim: int

    def embed_batch(self, sequences: Sequence[Sequence[int]]) -> np.ndarray:
        raise NotImplementedError


class TfidfEmbedder(Embedder):
    """Deterministic TF-IDF reference embedder over token ids.

    Document frequencies come from the index corpus; idf(t) =
    ln((N+1)/(df+1)) + 1, vectors are tf*idf rows L2-normalized.  Tokens
    never seen in the index corpus still get the df=0 idf weight at query
    time, and an empty sequence embeds as the zero vector.
    """

    def __init__(self, index_corpus: Sequence[Sequence[int]], vocab: "Vocab"):
        if len(index_corpus) == 0:
            raise ValueError("TF-IDF embedder needs a non-empty index corpus")
        self.dim = len(vocab)
        df = np.zeros(self.dim, dtype=float)
        for seq in index_corpus:
            for tid in set(seq):
                df[tid] += 1.0
        n_docs = len(index_corpus)
        self._idf = np.log((n_docs + 1.0) / (df + 1.0)) + 1.0

    def embed_batch(self, sequences: Sequence[Sequence[int]]) -> np.ndarray:
        out = np.zeros((len(sequences), self.dim), dtype=float)
        for row, seq in enumerate(sequences):
            if len(seq) == 0:
                continue
            tf = np.bincount(np.asarray(seq, dtype=int), minlength=self.dim)
            if tf.shape[0] > self.dim:
                raise ValueError("sequence contains token ids outside the vocabulary")
            out[row] = tf * self._idf
        return _normalize_rows(out)


class RemoteEmbedder(Embedder):
    """Client for an external embedding service speaking the /embed protocol.

    Request: POST {endpoint}/embed with {"ids": [[int, ...], ...]};
    response: {"embeddings": [[float, ...], ...]} in request order.  Batches
    of `batch_size` sequences are sent per request; `max_in_flight` requests
    may run concurrently, with results placed back in batch order.
    """

    def __init__(
        self,
        endpoint: str,
        dim: int,
        *,
        batch_size: int = 32,
        timeout: float = 30.0,
        max_in_flight: int = 1,
        session: requests.Session | None = None,
    ):
        if batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if max_in_flight < 1:
            raise ValueError("max_in_flight must be >= 1")
        base = endpoint.rstrip("/")
        self.url = base if base.endswith("/embed") else base + "/embed"
        self.dim = dim
        self.batch_size = batch_size
        self.timeout = timeout
        self.max_in_flight = max_in_flight
        self._session = session or requests.Session()

    def _post(self, batch: Sequence[Sequence[int]]) -> np.ndarray:
        payload = {"ids": [[int(t) for t in seq] for seq in batch]}
        try:
            resp = self._session.post(self.url, json=payload, timeout=self.timeout)
        except requests.RequestException as exc:
            raise TransportError(f"embedding request to {self.url} failed: {exc}") from exc
        if not 200 <= resp.status_code < 300:
            raise TransportError(f"embedding endpoint returned HTTP {resp.status_code}")
        try:
            body = resp.json()
        except ValueError as exc:
            raise MalformedResponseError("embedding response is not valid JSON") from exc
        if not isinstance(body, dict) or "embeddings" not in body:
            raise MalformedResponseError('embedding response lacks an "embeddings" field')
        embeddings = body["embeddings"]
        if not isinstance(embeddings, list) or len(embeddings) != len(batch):
            raise MalformedResponseError(
                f"expected {len(batch)} embeddings, got "
                f"{len(embeddings) if isinstance(embeddings, list) else type(embeddings).__name__}"
            )
        try:
            arr = np.asarray(embeddings, dtype=float)
        except (ValueError, TypeError) as exc:
            raise MalformedResponseError(f"embedding rows are not numeric arrays: {exc}") from exc
        if arr.ndim != 2:
            raise MalformedResponseError("embedding rows have inconsistent lengths")
        if arr.shape[1] != self.dim:
            raise EmbeddingDimError(f"expected dimension {self.dim}, got {arr.shape[1]}")
        if not np.isfinite(arr).all():
            raise EmbeddingValueError("embedding response contains non-finite components")
        return arr

    def embed_batch(self, sequences: Sequence[Sequence[int]]) -> np.ndarray:
        if len(sequences) == 0:
            return np.zeros((0, self.dim), dtype=float)
        batches = [sequences[i : i + self.batch_size] for i in range(0, len(sequences), self.batch_size)]
        if self.max_in_flight > 1 and len(batches) > 1:
            with ThreadPoolExecutor(max_workers=self.max_in_flight) as pool:
                parts = list(pool.map(self._post, batches))
        else:
            parts = [self._post(b) for b in batches]
        return np.concatenate(parts, axis=0)


@dataclass(frozen=True)
class ChunkIndex:
    chunks: list[Chunk]
    vectors: np.ndarray  # one row per chunk, in chunk order
    chunk_size: int
    stride: int

    def __post_init__(self) -> None:
        if len(self.chunks) != self.vectors.shape[0]:
            raise ValueError("one vector per chunk required")
        self.vectors.setflags(write=False)

    def __len__(self) -> int:
        return len(self.chunks)


@dataclass(frozen=True)
class EvalResult:
    recall_at_k: float
    k: int
    chunk_size: int
    per_question_hits: list[bool]
    num_chunks: int


def build_index(
    dataset: EvalDataset, vocab: "Vocab", spec: ChunkSpec, embedder: Embedder
) -> ChunkIndex:
    """Flat-encode and chunk every passage, then embed each chunk."""
    chunks: list[Chunk] = []
    for passage in dataset.passages:
        ids = encode(passage.text, vocab, Mode.FLAT).ids
        chunks.extend(chunk_tokens(ids, spec, passage_id=passage.id))
    vectors = embedder.embed_batch([c.ids for c in chunks])
    return ChunkIndex(chunks=chunks, vectors=np.asarray(vectors, dtype=float), chunk_size=spec.size, stride=spec.stride)


def _top_k_rows(sims: np.ndarray, k: int) -> np.ndarray:
    # Stable sort on the negated scores: equal similarities keep ascending
    # chunk order, so ties resolve to the lower chunk position.
    return np.argsort(-sims, kind="stable")[:k]


def recall_at_k(
    dataset: EvalDataset,
    index: ChunkIndex,
    embedder: Embedder,
    vocab: "Vocab",
    k: int,
    *,
    dedup_passages: bool = False,
) -> EvalResult:
    """Fraction of questions whose gold passage appears in the top-k chunks.

    Questions are flat-encoded with `vocab` and embedded with the same
    embedder as the index.  With dedup_passages the ranking is collapsed to
    distinct passages before taking k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(index) == 0:
        raise ValueError("cannot evaluate against an empty index")

    question_ids = [encode(q.text, vocab, Mode.FLAT).ids for q in dataset.questions]
    qvecs = embedder.embed_batch(question_ids)
    normed_index = _normalize_rows(np.asarray(index.vectors, dtype=float))
    normed_q = _normalize_rows(np.asarray(qvecs, dtype=float))

    hits: list[bool] = []
    for q, qv in zip(dataset.questions, normed_q):
        sims = normed_index @ qv
        if dedup_passages:
            seen: set = set()
            top_passages = []
            for idx in np.argsort(-sims, kind="stable"):
                pid = index.chunks[idx].passage_id
                if pid not in seen:
                    seen.add(pid)
                    top_passages.append(pid)
                    if len(top_passages) == k:
                        break
            hits.append(q.passage_id in top_passages)
        else:
            top = _top_k_rows(sims, k)
            hits.append(any(index.chunks[i].passage_id == q.passage_id for i in top))

    return EvalResult(
        recall_at_k=sum(hits) / len(hits) if hits else 0.0,
        k=k,
        chunk_size=index.chunk_size,
        per_question_hits=hits,
        num_chunks=len(index),
    )
