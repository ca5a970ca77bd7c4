"""Turkish letter classes and the right-to-left greedy syllable splitter.

Turkish syllables follow six phonological templates (V, CV, VC, CVC, VCC,
CVCC).  A word is split by scanning from the right end and taking the longest
template that matches at the current position; a consonant that fits no
template (loanword onset clusters such as "tren", "strateji") is emitted as an
isolated single-consonant token.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

VOWELS = frozenset("aeıioöuü")

# The 21 native consonants plus q/w/x so loanwords degrade to isolated
# consonants instead of failing.
CONSONANTS = frozenset("bcçdfgğhjklmnprsştvyz") | frozenset("qwx")


class LetterClass(Enum):
    VOWEL = "V"
    CONSONANT = "C"
    OTHER = "O"


class PatternTag(Enum):
    V = "V"
    CV = "CV"
    VC = "VC"
    CVC = "CVC"
    VCC = "VCC"
    CVCC = "CVCC"
    LONE_C = "LoneC"


@dataclass(frozen=True)
class Syllable:
    text: str
    pattern: PatternTag

    def __str__(self) -> str:
        return self.text


def classify_char(ch: str) -> LetterClass:
    """Classify a single codepoint as vowel, consonant, or other."""
    if ch in VOWELS:
        return LetterClass.VOWEL
    if ch in CONSONANTS:
        return LetterClass.CONSONANT
    return LetterClass.OTHER


_TEMPLATES = {
    "V": PatternTag.V,
    "CV": PatternTag.CV,
    "VC": PatternTag.VC,
    "CVC": PatternTag.CVC,
    "VCC": PatternTag.VCC,
    "CVCC": PatternTag.CVCC,
}

# Longest-first test order; a lone consonant is the fallback.
_MATCH_ORDER = ("CVCC", "VCC", "CVC", "VC", "CV", "V")


def _signature(s: str) -> str | None:
    """Letter-class string ("CVC" etc.), or None if any char is non-letter."""
    out = []
    for ch in s:
        cls = classify_char(ch)
        if cls is LetterClass.OTHER:
            return None
        out.append(cls.value)
    return "".join(out)


def match_pattern(s: str) -> PatternTag | None:
    """Template whose class sequence equals that of `s`, if any.

    A single consonant maps to LONE_C; anything that fits none of the six
    templates (and is not a lone consonant) returns None.
    """
    sig = _signature(s)
    if sig is None:
        return None
    if sig in _TEMPLATES:
        return _TEMPLATES[sig]
    if sig == "C":
        return PatternTag.LONE_C
    return None


def syllabify_word(word: str) -> list[Syllable]:
    """Split a lowercase all-letter word into syllables.

    Scans right to left, testing CVCC, VCC, CVC, VC, CV, V in that fixed
    order at each position and consuming the first match; a consonant that
    matches nothing is emitted on its own.  The concatenation of the returned
    syllable texts always equals the input.
    """
    if not word:
        raise ValueError("cannot syllabify an empty word")
    sig = _signature(word)
    if sig is None:
        raise ValueError(f"word contains non-letter characters: {word!r}")

    out: list[Syllable] = []
    i = len(word) - 1
    while i >= 0:
        for template in _MATCH_ORDER:
            start = i - len(template) + 1
            if start >= 0 and sig[start : i + 1] == template:
                out.append(Syllable(word[start : i + 1], _TEMPLATES[template]))
                i = start - 1
                break
        else:
            out.append(Syllable(word[i], PatternTag.LONE_C))
            i -= 1
    out.reverse()
    return out


@lru_cache(maxsize=262144)
def syllable_texts(word: str) -> tuple[str, ...]:
    """Syllable strings of `word`, cached for corpus-scale reuse."""
    return tuple(s.text for s in syllabify_word(word))
