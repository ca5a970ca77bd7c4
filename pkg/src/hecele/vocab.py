"""Closed syllable vocabulary: building, persistence, and lookup.

A vocabulary maps every distinct syllable, single-digit, and punctuation
token seen in a corpus to an id.  Ids 0-5 are reserved for the special
tokens; corpus tokens get ids from 6 upward in descending frequency order,
ties broken by token text (codepoint order), so two builds over the same
documents produce identical vocabularies regardless of document order.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator

from .codec import token_texts
from .special_tokens import SPECIALS, UNK_ID
from .syllables import LetterClass, classify_char

FORMAT_NAME = "syllable-vocab"
FORMAT_VERSION = 1

_PARALLEL_BATCH_DOCS = 2000


class VocabError(ValueError):
    """Base class for vocabulary construction and persistence errors."""


class VocabFormatError(VocabError):
    """Vocabulary file is malformed or structurally invalid."""


class VocabVersionError(VocabFormatError):
    """Vocabulary file has the wrong format name or version."""


class DuplicateTokenError(VocabFormatError):
    """Vocabulary file assigns the same token text twice."""


class Vocab:
    """Immutable bidirectional token<->id map with reserved specials."""

    def __init__(self, tokens: Iterable[tuple[str, int]]):
        """`tokens` are (text, count) pairs already in id order (id 6, 7, ...)."""
        self._id_to_token: list[str] = list(SPECIALS)
        self._counts: dict[str, int] = {}
        for text, count in tokens:
            self._id_to_token.append(text)
            self._counts[text] = count
        self._token_to_id = {t: i for i, t in enumerate(self._id_to_token)}
        if len(self._token_to_id) != len(self._id_to_token):
            raise DuplicateTokenError("duplicate token text in vocabulary")

    def __len__(self) -> int:
        return len(self._id_to_token)

    def __contains__(self, text: str) -> bool:
        return text in self._token_to_id

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vocab):
            return NotImplemented
        return self._id_to_token == other._id_to_token and self._counts == other._counts

    def token_id(self, text: str) -> int:
        """Id of a known token; raises KeyError for unknown text."""
        return self._token_to_id[text]

    def encode_token(self, text: str) -> int:
        """Id of a token, or the UNK id when the text is not in the vocabulary."""
        return self._token_to_id.get(text, UNK_ID)

    def token_text(self, token_id: int) -> str:
        if not 0 <= token_id < len(self._id_to_token):
            raise ValueError(f"token id {token_id} out of range for vocabulary of size {len(self)}")
        return self._id_to_token[token_id]

    def count(self, text: str) -> int:
        """Corpus frequency of a token (0 for specials and unknown text)."""
        return self._counts.get(text, 0)

    def is_special(self, token_id: int) -> bool:
        return 0 <= token_id < len(SPECIALS)

    @property
    def num_syllable_types(self) -> int:
        """Distinct syllable tokens (all-letter texts; excludes digits/punct)."""
        return sum(
            1
            for text in self._id_to_token[len(SPECIALS) :]
            if all(classify_char(ch) is not LetterClass.OTHER for ch in text)
        )

    def items(self) -> Iterator[tuple[str, int, int]]:
        """(text, id, count) for every non-special token, in id order."""
        for i, text in enumerate(self._id_to_token[len(SPECIALS) :], start=len(SPECIALS)):
            yield text, i, self._counts[text]


def _count_batch(docs: list[str]) -> Counter:
    counts: Counter = Counter()
    for doc in docs:
        counts.update(token_texts(doc))
    return counts


def _batched(docs: Iterable[str], size: int) -> Iterator[list[str]]:
    it = iter(docs)
    while batch := list(itertools.islice(it, size)):
        yield batch


def count_tokens(documents: Iterable[str], workers: int = 1) -> Counter:
    """Token frequencies over a document stream.

    With workers > 1 the documents are counted in parallel batches; the merge
    is a plain sum, so totals never depend on batch boundaries or order.
    """
    counts: Counter = Counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for partial in pool.map(_count_batch, _batched(documents, _PARALLEL_BATCH_DOCS)):
                counts.update(partial)
        return counts
    for doc in documents:
        counts.update(token_texts(doc))
    return counts


def build_vocab(documents: Iterable[str], workers: int = 1) -> Vocab:
    """Build a vocabulary from a document stream.

    Every document is normalized, segmented, and syllabified; each distinct
    token gets an id by descending frequency, ties by codepoint order.
    Raises VocabError when the stream yields no tokens at all.
    """
    counts = count_tokens(documents, workers=workers)
    if not counts:
        raise VocabError("corpus produced no tokens")
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return Vocab(ordered)


def save_vocab(vocab: Vocab, path: str) -> None:
    """Write the vocabulary as versioned JSON, one token record per line."""
    with open(path, "w", encoding="utf-8") as f:
        f.write("{\n")
        f.write(f'  "format": {json.dumps(FORMAT_NAME)},\n')
        f.write(f'  "version": {FORMAT_VERSION},\n')
        f.write(f'  "specials": {json.dumps(list(SPECIALS), ensure_ascii=False)},\n')
        f.write('  "tokens": [\n')
        records = [
            json.dumps({"text": text, "id": tid, "count": count}, ensure_ascii=False)
            for text, tid, count in vocab.items()
        ]
        f.write(",\n".join("    " + r for r in records))
        f.write("\n  ]\n}\n")


def load_vocab(path: str) -> Vocab:
    """Load a vocabulary file; the inverse of save_vocab.

    Raises VocabFormatError for malformed files, VocabVersionError for a
    wrong format name/version, DuplicateTokenError for repeated token text.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise VocabFormatError(f"not a valid vocabulary file: {exc}") from exc

    if not isinstance(data, dict):
        raise VocabFormatError("vocabulary file must contain a JSON object")
    if data.get("format") != FORMAT_NAME or data.get("version") != FORMAT_VERSION:
        raise VocabVersionError(
            f"expected format {FORMAT_NAME!r} version {FORMAT_VERSION}, "
            f"got {data.get('format')!r} version {data.get('version')!r}"
        )
    if data.get("specials") != list(SPECIALS):
        raise VocabFormatError("vocabulary file has a missing or unexpected specials block")
    records = data.get("tokens")
    if not isinstance(records, list):
        raise VocabFormatError("vocabulary file has no token list")

    tokens: list[tuple[str, int]] = []
    seen: set[str] = set()
    for i, rec in enumerate(records):
        if not isinstance(rec, dict):
            raise VocabFormatError(f"token record {i} is not an object")
        text, tid, count = rec.get("text"), rec.get("id"), rec.get("count")
        if not isinstance(text, str) or not text:
            raise VocabFormatError(f"token record {i} has an invalid text field")
        if text in SPECIALS or text in seen:
            raise DuplicateTokenError(f"duplicate token text {text!r}")
        if tid != len(SPECIALS) + i:
            raise VocabFormatError(f"token record {i} has id {tid}, expected {len(SPECIALS) + i}")
        if not isinstance(count, int) or count < 0:
            raise VocabFormatError(f"token record {i} has an invalid count field")
        seen.add(text)
        tokens.append((text, count))
    return Vocab(tokens)
