"""Syllable splitter tests: golden segmentations, match order, and invariants."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecele.syllables import (
    CONSONANTS,
    VOWELS,
    LetterClass,
    PatternTag,
    classify_char,
    match_pattern,
    syllabify_word,
    syllable_texts,
)

TURKISH_LETTERS = "abcçdefgğhıijklmnoöprsştuüvyz"

# Known-good segmentations; the first block is the worked sentence example,
# the rest pin down pattern precedence and loanword behavior.
GOLD = {
    "atasözleri": ["a", "ta", "söz", "le", "ri"],
    "geçmişten": ["geç", "miş", "ten"],
    "günümüze": ["gü", "nü", "mü", "ze"],
    "kadar": ["ka", "dar"],
    "ulaşan": ["u", "la", "şan"],
    "anlamı": ["an", "la", "mı"],
    "bakımından": ["ba", "kı", "mın", "dan"],
    "mecazlı": ["me", "caz", "lı"],
    "bir": ["bir"],
    "mana": ["ma", "na"],
    "kazanan": ["ka", "za", "nan"],
    "kalıplaşmış": ["ka", "lıp", "laş", "mış"],
    "sözlerdir": ["söz", "ler", "dir"],
    # pattern precedence
    "türk": ["türk"],  # CVCC wins over VCC splitting
    "kal": ["kal"],  # CVC wins over V+... decompositions
    "an": ["an"],
    "o": ["o"],
    "üst": ["üst"],
    "elektrik": ["e", "lekt", "rik"],  # greedy right-to-left takes "lekt" (CVCC)
    "merhaba": ["mer", "ha", "ba"],
    "dünya": ["dün", "ya"],
    "bira": ["bi", "ra"],
    "istanbul": ["is", "tan", "bul"],
    # loanword onset clusters degrade to isolated consonants
    "tren": ["t", "ren"],
    "strateji": ["s", "t", "ra", "te", "ji"],
    "spor": ["s", "por"],
}


@pytest.mark.parametrize("word,expected", GOLD.items(), ids=GOLD.keys())
def test_gold_segmentations(word, expected):
    assert [s.text for s in syllabify_word(word)] == expected


def test_concatenation_recovers_word():
    for word in GOLD:
        assert "".join(s.text for s in syllabify_word(word)) == word


def test_letter_classes():
    assert classify_char("a") is LetterClass.VOWEL
    assert classify_char("ğ") is LetterClass.CONSONANT
    assert classify_char("q") is LetterClass.CONSONANT
    assert classify_char("3") is LetterClass.OTHER
    assert classify_char(".") is LetterClass.OTHER
    assert len(VOWELS) == 8
    assert VOWELS == frozenset("aeıioöuü")
    assert frozenset("bcçdfgğhjklmnprsştvyz") < CONSONANTS


@pytest.mark.parametrize(
    "text,tag",
    [
        ("a", PatternTag.V),
        ("ka", PatternTag.CV),
        ("al", PatternTag.VC),
        ("kal", PatternTag.CVC),
        ("üst", PatternTag.VCC),
        ("türk", PatternTag.CVCC),
        ("t", PatternTag.LONE_C),
        ("ktr", None),
        ("a1", None),
        ("", None),
    ],
)
def test_match_pattern(text, tag):
    assert match_pattern(text) is tag


def test_patterns_annotated_on_syllables():
    tags = [s.pattern for s in syllabify_word("türkülerden")]
    assert tags == [PatternTag.CVC, PatternTag.CV, PatternTag.CVC, PatternTag.CVC]


@pytest.mark.parametrize("bad", ["", "ab1", "a b", "a.b", "ABC"])
def test_rejects_non_letter_input(bad):
    with pytest.raises(ValueError):
        syllabify_word(bad)


def test_syllable_texts_matches_syllabify():
    assert list(syllable_texts("atasözleri")) == ["a", "ta", "söz", "le", "ri"]
    assert isinstance(syllable_texts("kadar"), tuple)


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet=TURKISH_LETTERS, min_size=1, max_size=30))
def test_fuzz_round_trip_and_invariants(word):
    syllables = syllabify_word(word)
    assert "".join(s.text for s in syllables) == word
    for syl in syllables:
        if syl.pattern is PatternTag.LONE_C:
            assert len(syl.text) == 1 and syl.text in CONSONANTS
        else:
            assert match_pattern(syl.text) is syl.pattern
            assert sum(ch in VOWELS for ch in syl.text) == 1


def test_no_two_adjacent_syllables_merge_into_longer_match():
    # The splitter is greedy: a syllable followed by a consonant-initial one
    # must re-split identically when concatenated.
    rng = random.Random(7)
    firsts = ["a", "ka", "al", "kal", "üst", "türk"]
    inners = ["ba", "dır", "kent"]
    for _ in range(200):
        parts = [rng.choice(firsts)] + [rng.choice(inners) for _ in range(rng.randint(1, 4))]
        word = "".join(parts)
        assert list(syllable_texts(word)) == parts
