"""Encoding between text and token-id sequences.

Flat mode emits syllable/digit/punctuation tokens contiguously, exactly as the
vocabulary counts them; word boundaries are not recoverable from a flat
sequence.  Lossless mode additionally inserts a word-boundary token wherever
the normalized text had a space, so decoding reproduces the normalized text
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Sequence

from .normalize import TextUnit, UnitKind, normalize, split_units
from .special_tokens import CLS_ID, MASK_ID, PAD_ID, SEP_ID, UNK_ID, WB_ID
from .syllables import syllable_texts

if TYPE_CHECKING:
    from .vocab import Vocab

DEFAULT_MODEL_MAX_LEN = 512

# Offset used for inserted special tokens (WB/CLS/SEP), which belong to no
# text unit.
SPECIAL_OFFSET = (-1, -1)


class Mode(Enum):
    FLAT = "flat"
    LOSSLESS = "lossless"


@dataclass(frozen=True)
class Encoding:
    ids: list[int]
    mode: Mode
    offsets: list[tuple[int, int]]  # (unit index, token index within unit)

    def __len__(self) -> int:
        return len(self.ids)


def unit_token_texts(unit: TextUnit) -> list[str]:
    """Token strings of one unit: syllables, single digits, or the punct char."""
    if unit.kind is UnitKind.WORD:
        return list(syllable_texts(unit.text))
    if unit.kind is UnitKind.DIGITS:
        return list(unit.text)
    return [unit.text]


def token_texts(text: str) -> list[str]:
    """Flat token strings of raw text (normalize, split, syllabify)."""
    out: list[str] = []
    for unit in split_units(normalize(text)):
        out.extend(unit_token_texts(unit))
    return out


def hyphenate(text: str) -> str:
    """Human-readable segmentation: tokens joined by "-" inside each unit,
    units separated by spaces, punctuation omitted."""
    parts = []
    for unit in split_units(normalize(text)):
        if unit.kind is UnitKind.PUNCT:
            continue
        parts.append("-".join(unit_token_texts(unit)))
    return " ".join(parts)


def encode(text: str, vocab: "Vocab", mode: Mode = Mode.FLAT) -> Encoding:
    """Encode raw text to token ids; unknown tokens map to the UNK id."""
    units = split_units(normalize(text))
    ids: list[int] = []
    offsets: list[tuple[int, int]] = []
    prev_end = None
    for u_idx, unit in enumerate(units):
        if mode is Mode.LOSSLESS and prev_end is not None and unit.char_offset > prev_end:
            ids.append(WB_ID)
            offsets.append(SPECIAL_OFFSET)
        for t_idx, tok in enumerate(unit_token_texts(unit)):
            ids.append(vocab.encode_token(tok))
            offsets.append((u_idx, t_idx))
        prev_end = unit.char_offset + len(unit.text)
    return Encoding(ids=ids, mode=mode, offsets=offsets)


def decode(ids: Iterable[int], vocab: "Vocab", mode: Mode = Mode.FLAT) -> str:
    """Decode token ids back to text.

    Lossless turns word-boundary tokens into single spaces; flat drops them
    (boundaries are not representable).  PAD/CLS/SEP/MASK are skipped in both
    modes; UNK renders as its placeholder text.  Raises ValueError on an
    out-of-range id.
    """
    skipped = (PAD_ID, CLS_ID, SEP_ID, MASK_ID)
    parts: list[str] = []
    for tid in ids:
        if tid == WB_ID:
            if mode is Mode.LOSSLESS:
                parts.append(" ")
            continue
        if tid in skipped:
            continue
        parts.append(vocab.token_text(tid))
    return "".join(parts)


def encode_for_model(text: str, vocab: "Vocab", max_len: int = DEFAULT_MODEL_MAX_LEN) -> Encoding:
    """Flat-encode wrapped as [CLS] ids [SEP], truncated to `max_len`.

    Truncation drops trailing body tokens and always keeps the final SEP.
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2 to fit CLS and SEP")
    flat = encode(text, vocab, Mode.FLAT)
    ids = [CLS_ID, *flat.ids, SEP_ID]
    offsets = [SPECIAL_OFFSET, *flat.offsets, SPECIAL_OFFSET]
    if len(ids) > max_len:
        ids = ids[: max_len - 1] + [SEP_ID]
        offsets = offsets[: max_len - 1] + [SPECIAL_OFFSET]
    return Encoding(ids=ids, mode=Mode.FLAT, offsets=offsets)


def count_unknown(ids: Sequence[int]) -> int:
    """Number of UNK ids in a sequence (OOV diagnostics)."""
    return sum(1 for t in ids if t == UNK_ID)
