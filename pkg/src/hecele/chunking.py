"""Overlapping fixed-length token windows for training export and retrieval.

Windows start at multiples of the stride while they fit; when the final
stride step would leave trailing tokens uncovered, one extra window is
clamped to end exactly at the sequence end, so every token is inside at
least one window and no window is emitted twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

TRAINING_CHUNK_SIZE = 256
TRAINING_STRIDE = 128


@dataclass(frozen=True)
class ChunkSpec:
    size: int
    stride: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"chunk size must be >= 1, got {self.size}")
        if not 1 <= self.stride <= self.size:
            raise ValueError(f"stride must be in [1, size], got {self.stride} for size {self.size}")


@dataclass(frozen=True)
class Chunk:
    passage_id: object
    start: int
    ids: list[int]

    def __len__(self) -> int:
        return len(self.ids)


def default_retrieval_stride(size: int) -> int:
    """Half-overlap stride used for retrieval indexing: size // 2, minimum 1."""
    if size < 2:
        raise ValueError(f"retrieval chunk size must be >= 2, got {size}")
    return max(1, size // 2)


def training_spec() -> ChunkSpec:
    """Window preset used for exporting encoder training examples."""
    return ChunkSpec(TRAINING_CHUNK_SIZE, TRAINING_STRIDE)


def chunk_tokens(ids: Sequence[int], spec: ChunkSpec, passage_id: object = None) -> list[Chunk]:
    """Split a token-id sequence into overlapping windows.

    Empty input yields no chunks; input no longer than the window yields
    exactly one chunk covering everything.
    """
    n = len(ids)
    if n == 0:
        return []
    if n <= spec.size:
        return [Chunk(passage_id, 0, list(ids))]

    chunks: list[Chunk] = []
    start = 0
    while start + spec.size <= n:
        chunks.append(Chunk(passage_id, start, list(ids[start : start + spec.size])))
        start += spec.stride
    last = chunks[-1]
    if last.start + spec.size < n:
        tail_start = n - spec.size
        chunks.append(Chunk(passage_id, tail_start, list(ids[tail_start:])))
    return chunks
