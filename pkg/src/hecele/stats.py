"""Token-density metrics over a corpus.

Counts are additive across documents, so streaming a corpus document by
document and summing partial stats gives exactly the batch result.  The
character denominator excludes whitespace; tokens are counted in flat mode
(syllables plus single digits plus punctuation chars).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from .codec import unit_token_texts
from .normalize import UnitKind, normalize, split_units

if TYPE_CHECKING:
    from .vocab import Vocab


@dataclass(frozen=True)
class DensityStats:
    word_count: int
    token_count: int
    char_count: int
    syllable_count: int

    @property
    def tokens_per_word(self) -> float:
        return self.token_count / self.word_count if self.word_count else 0.0

    @property
    def tokens_per_char(self) -> float:
        return self.token_count / self.char_count if self.char_count else 0.0

    @property
    def syllables_per_word(self) -> float:
        return self.syllable_count / self.word_count if self.word_count else 0.0

    def __add__(self, other: "DensityStats") -> "DensityStats":
        return DensityStats(
            word_count=self.word_count + other.word_count,
            token_count=self.token_count + other.token_count,
            char_count=self.char_count + other.char_count,
            syllable_count=self.syllable_count + other.syllable_count,
        )


def _count_document(doc: str) -> DensityStats:
    norm = normalize(doc)
    words = tokens = syllables = 0
    chars = sum(1 for ch in norm if not ch.isspace())
    for unit in split_units(norm):
        n = len(unit_token_texts(unit))
        tokens += n
        if unit.kind is UnitKind.WORD:
            words += 1
            syllables += n
    return DensityStats(words, tokens, chars, syllables)


def density(corpus: Iterable[str], vocab: "Vocab | None" = None) -> DensityStats:
    """Aggregate density stats over a document stream.

    Token counts do not depend on id assignment, so the vocabulary argument
    is accepted for interface symmetry but never consulted.  Raises
    ValueError when the corpus contains no tokens at all.
    """
    total = DensityStats(0, 0, 0, 0)
    for doc in corpus:
        total = total + _count_document(doc)
    if total.token_count == 0:
        raise ValueError("corpus produced no tokens")
    return total
