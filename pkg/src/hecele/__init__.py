"""Deterministic Turkish syllable tokenization, chunking, and retrieval evaluation.

The package splits Turkish text into phonological syllables with a fixed
six-pattern rule, builds a closed syllable vocabulary from a corpus, encodes
and decodes token-id streams, windows them into overlapping chunks, and
evaluates Recall@k retrieval over those chunks with pluggable embedders.
"""

from .chunking import (
    TRAINING_CHUNK_SIZE,
    TRAINING_STRIDE,
    Chunk,
    ChunkSpec,
    chunk_tokens,
    default_retrieval_stride,
    training_spec,
)
from .codec import (
    DEFAULT_MODEL_MAX_LEN,
    Encoding,
    Mode,
    count_unknown,
    decode,
    encode,
    encode_for_model,
    hyphenate,
    token_texts,
)
from .normalize import TextUnit, UnitKind, normalize, split_units
from .retrieval import (
    ChunkIndex,
    DatasetError,
    Embedder,
    EmbeddingDimError,
    EmbeddingServiceError,
    EmbeddingValueError,
    EvalDataset,
    EvalResult,
    MalformedResponseError,
    Passage,
    Question,
    RemoteEmbedder,
    TfidfEmbedder,
    TransportError,
    build_index,
    cosine,
    mean_pairwise_cosine,
    recall_at_k,
)
from .special_tokens import CLS_ID, MASK_ID, PAD_ID, SEP_ID, SPECIALS, UNK_ID, WB_ID
from .stats import DensityStats, density
from .syllables import (
    CONSONANTS,
    VOWELS,
    LetterClass,
    PatternTag,
    Syllable,
    classify_char,
    match_pattern,
    syllabify_word,
)
from .vocab import (
    DuplicateTokenError,
    Vocab,
    VocabError,
    VocabFormatError,
    VocabVersionError,
    build_vocab,
    count_tokens,
    load_vocab,
    save_vocab,
)

__version__ = "0.1.0"

__all__ = [
    "CLS_ID",
    "CONSONANTS",
    "Chunk",
    "ChunkIndex",
    "ChunkSpec",
    "DEFAULT_MODEL_MAX_LEN",
    "DatasetError",
    "DensityStats",
    "DuplicateTokenError",
    "Embedder",
    "EmbeddingDimError",
    "EmbeddingServiceError",
    "EmbeddingValueError",
    "Encoding",
    "EvalDataset",
    "EvalResult",
    "LetterClass",
    "MASK_ID",
    "MalformedResponseError",
    "Mode",
    "PAD_ID",
    "Passage",
    "PatternTag",
    "Question",
    "RemoteEmbedder",
    "SEP_ID",
    "SPECIALS",
    "Syllable",
    "TRAINING_CHUNK_SIZE",
    "TRAINING_STRIDE",
    "TextUnit",
    "TfidfEmbedder",
    "TransportError",
    "UNK_ID",
    "UnitKind",
    "Vocab",
    "VocabError",
    "VocabFormatError",
    "VocabVersionError",
    "VOWELS",
    "WB_ID",
    "build_index",
    "build_vocab",
    "chunk_tokens",
    "classify_char",
    "cosine",
    "count_tokens",
    "count_unknown",
    "decode",
    "default_retrieval_stride",
    "density",
    "encode",
    "encode_for_model",
    "hyphenate",
    "load_vocab",
    "match_pattern",
    "mean_pairwise_cosine",
    "normalize",
    "recall_at_k",
    "save_vocab",
    "split_units",
    "syllabify_word",
    "token_texts",
    "training_spec",
    "__version__",
]
