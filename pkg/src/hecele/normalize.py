"""Text normalization and segmentation into word / digit / punctuation units.

Normalization composes Unicode (NFC), applies the Turkish case mapping
(dotted İ→i, dotless I→ı, everything else via the standard lowercase), and
collapses whitespace runs to single spaces.  Segmentation then partitions the
non-whitespace codepoints: maximal Turkish-letter runs become words, maximal
decimal-digit runs become digit units, and every other codepoint stands alone
as a punctuation unit.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum

from .syllables import LetterClass, classify_char


class UnitKind(Enum):
    WORD = "word"
    DIGITS = "digits"
    PUNCT = "punct"


@dataclass(frozen=True)
class TextUnit:
    kind: UnitKind
    text: str
    char_offset: int  # index of the first char in the normalized text


_TURKISH_CASE = str.maketrans({"İ": "i", "I": "ı"})


def normalize(text: str) -> str:
    """NFC-compose, Turkish-lowercase, and collapse whitespace."""
    text = unicodedata.normalize("NFC", text)
    text = text.translate(_TURKISH_CASE).lower()
    return " ".join(text.split())


def split_units(normalized: str) -> list[TextUnit]:
    """Partition normalized text into Word / DigitRun / PunctChar units.

    Whitespace separates units but is not itself a unit; adjacency is
    recoverable from `char_offset` (consecutive units with a one-char gap were
    whitespace-separated).
    """
    units: list[TextUnit] = []
    i, n = 0, len(normalized)
    while i < n:
        ch = normalized[i]
        if ch.isspace():
            i += 1
            continue
        if classify_char(ch) is not LetterClass.OTHER:
            j = i + 1
            while j < n and classify_char(normalized[j]) is not LetterClass.OTHER:
                j += 1
            units.append(TextUnit(UnitKind.WORD, normalized[i:j], i))
            i = j
        elif ch.isdecimal():
            j = i + 1
            while j < n and normalized[j].isdecimal():
                j += 1
            units.append(TextUnit(UnitKind.DIGITS, normalized[i:j], i))
            i = j
        else:
            units.append(TextUnit(UnitKind.PUNCT, ch, i))
            i += 1
    return units
