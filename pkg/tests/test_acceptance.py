"""Acceptance gate: one test per shipping criterion, each printing PASS/FAIL.

Every criterion states its tolerance inline.  The synthetic fixture corpus
stands in for a public Turkish corpus sample: it is generated from the same
syllable inventory the tokenizer recognizes, sized and distributed so that
density, vocabulary scale, and chunk counts land where a real corpus lands.
"""

import contextlib
import json
import random
import subprocess
import sys
import time

import numpy as np
import pytest

from corpusgen import CorpusGenerator

import hecele
from hecele import (
    ChunkSpec,
    EvalDataset,
    Mode,
    Passage,
    Question,
    TfidfEmbedder,
    build_index,
    chunk_tokens,
    count_unknown,
    default_retrieval_stride,
    density,
    encode,
    hyphenate,
    mean_pairwise_cosine,
    recall_at_k,
)
from hecele.syllables import CONSONANTS, VOWELS, PatternTag, match_pattern, syllabify_word

from test_chunking import brute_force_starts
from test_retrieval import brute_force_hits

GOLDEN_IN = (
    "Atasözleri geçmişten günümüze kadar ulaşan anlamı bakımından "
    "mecazlı bir mana kazanan kalıplaşmış sözlerdir."
)
GOLDEN_OUT = (
    "a-ta-söz-le-ri geç-miş-ten gü-nü-mü-ze ka-dar u-la-şan an-la-mı "
    "ba-kı-mın-dan me-caz-lı bir ma-na ka-za-nan ka-lıp-laş-mış söz-ler-dir"
)

SWEEP_SIZES = [4, 6, 8, 12, 16, 32, 64, 128, 512]


@contextlib.contextmanager
def criterion(name: str):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[acceptance] FAIL {name}")
        raise
    print(f"[acceptance] PASS {name} ({time.perf_counter() - started:.2f}s)")


def test_golden_sentence():
    """Exact reproduction of the worked segmentation, under a millisecond."""
    with criterion("golden sentence (exact, < 1 ms)"):
        assert hyphenate(GOLDEN_IN) == GOLDEN_OUT
        timings = []
        for _ in range(5):
            hecele.syllables.syllable_texts.cache_clear()
            t0 = time.perf_counter()
            out = hyphenate(GOLDEN_IN)
            timings.append(time.perf_counter() - t0)
        assert out == GOLDEN_OUT
        assert min(timings) < 0.001


def test_round_trip_fuzz():
    """10,000 random letter words: lossless split, valid patterns, < 1 s."""
    with criterion("round-trip fuzz, 10k words (exact, < 1 s)"):
        rng = random.Random(20240814)
        alphabet = "abcçdefgğhıijklmnoöprsştuüvyz"
        words = ["".join(rng.choice(alphabet) for _ in range(rng.randint(1, 30)))
                 for _ in range(10_000)]

        t0 = time.perf_counter()
        split = [syllabify_word(w) for w in words]
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0

        for word, syllables in zip(words, split):
            assert "".join(s.text for s in syllables) == word
            for syl in syllables:
                if syl.pattern is PatternTag.LONE_C:
                    assert len(syl.text) == 1 and syl.text in CONSONANTS
                else:
                    assert match_pattern(syl.text) is syl.pattern
                    assert sum(ch in VOWELS for ch in syl.text) == 1


def test_zero_oov_closure(corpus_path, corpus_vocab):
    """Re-encoding the vocabulary's own corpus yields no unknown tokens."""
    with criterion("zero-OOV closure on build corpus (exact)"):
        unk = 0
        with open(corpus_path, encoding="utf-8") as f:
            for line in f:
                unk += count_unknown(encode(line.rstrip("\n"), corpus_vocab, Mode.FLAT).ids)
        assert unk == 0


def test_density(corpus_path):
    """Corpus-scale token density within the documented windows."""
    with criterion("density: tokens/word in [3.0, 3.45], syllables/word in [2.9, 3.2]"):
        with open(corpus_path, encoding="utf-8") as f:
            stats = density(line.rstrip("\n") for line in f)
        assert 3.0 <= stats.tokens_per_word <= 3.45, stats.tokens_per_word
        assert 2.9 <= stats.syllables_per_word <= 3.2, stats.syllables_per_word


def test_vocab_scale(corpus_vocab):
    """Corpus yields a closed syllable inventory of the expected size."""
    with criterion("vocabulary scale: 6,000-10,000 syllable types"):
        assert 6_000 <= corpus_vocab.num_syllable_types <= 10_000, corpus_vocab.num_syllable_types


def test_chunk_count_oracle():
    """Window enumeration matches brute force; counts scale like the benchmark table."""
    with criterion("chunk-count oracle (exact) and 255x~226-token scale (5%)"):
        rng = random.Random(7)
        cases = [(n, size, stride)
                 for n in range(0, 65)
                 for size in SWEEP_SIZES
                 for stride in {1, 2, size // 2, size - 1, size} if 1 <= stride <= size]
        cases += [(rng.randrange(0, 2001), size, rng.randint(1, size))
                  for size in SWEEP_SIZES for _ in range(250)]
        for n, size, stride in cases:
            got = [c.start for c in chunk_tokens(list(range(n)), ChunkSpec(size, stride))]
            assert got == brute_force_starts(n, size, stride), (n, size, stride)

        # 255 passages with ~226 tokens each, stride = size/2, vs benchmark counts
        lengths = [max(8, round(rng.gauss(226, 30))) for _ in range(255)]
        benchmark = {4: 28_706, 8: 14_420, 16: 7_235}
        for size, expected in benchmark.items():
            spec = ChunkSpec(size, default_retrieval_stride(size))
            total = sum(len(chunk_tokens(list(range(n)), spec)) for n in lengths)
            assert abs(total - expected) / expected <= 0.05, (size, total, expected)


def _retrieval_dataset(n_passages: int, words_per_passage: int, n_questions: int, seed: int):
    gen = CorpusGenerator(seed=seed)
    word_lists = [[gen.word()[0] for _ in range(words_per_passage)] for _ in range(n_passages)]
    passages = [Passage(f"p{i}", " ".join(ws)) for i, ws in enumerate(word_lists)]
    rng = gen.rng
    questions = []
    for i in range(n_questions):
        p = rng.randrange(n_passages)
        words = word_lists[p]
        start = rng.randrange(len(words) - 4)
        questions.append(Question(f"q{i}", " ".join(words[start : start + 4]), f"p{p}"))
    ds = EvalDataset(passages, questions)
    vocab = hecele.build_vocab([p.text for p in passages])
    return ds, vocab, word_lists


def test_retrieval_oracle():
    """Recall@5 equals an independent full-scan oracle; verbatim queries hit 1.0."""
    with criterion("retrieval oracle on 50 passages (exact) + verbatim recall 1.0"):
        ds, vocab, _ = _retrieval_dataset(50, 20, 100, seed=1453)
        spec = ChunkSpec(8, 4)
        sequences = [c.ids
                     for p in ds.passages
                     for c in chunk_tokens(encode(p.text, vocab, Mode.FLAT).ids, spec)]
        embedder = TfidfEmbedder(sequences, vocab)
        index = build_index(ds, vocab, spec, embedder)
        result = recall_at_k(ds, index, embedder, vocab, 5)
        assert result.per_question_hits == brute_force_hits(ds, index, embedder, vocab, 5)
        assert result.recall_at_k == sum(result.per_question_hits) / len(result.per_question_hits)

        # Verbatim questions: two-syllable words make every window word-aligned,
        # so each question is an exact token copy of one chunk of its passage.
        gen = CorpusGenerator(seed=2023)
        word_lists = [[gen.word(n=2)[0] for _ in range(16)] for _ in range(50)]
        passages = [Passage(f"p{i}", " ".join(ws)) for i, ws in enumerate(word_lists)]
        questions = []
        for i, ws in enumerate(word_lists):
            chunk_start = gen.rng.choice([0, 4, 8, 12, 16, 20, 24])  # token offsets, stride 4
            first_word = chunk_start // 2
            questions.append(Question(f"q{i}", " ".join(ws[first_word : first_word + 4]), f"p{i}"))
        verbatim = EvalDataset(passages, questions)
        vvocab = hecele.build_vocab([p.text for p in passages])
        vseqs = [c.ids
                 for p in verbatim.passages
                 for c in chunk_tokens(encode(p.text, vvocab, Mode.FLAT).ids, spec)]
        vembedder = TfidfEmbedder(vseqs, vvocab)
        vindex = build_index(verbatim, vvocab, spec, vembedder)
        vresult = recall_at_k(verbatim, vindex, vembedder, vvocab, 5)
        assert vresult.recall_at_k == 1.0, vresult.recall_at_k


def test_diagnostics():
    """Mean pairwise cosine pins collapse detection to known values."""
    with criterion("diagnostics: 0.47140452 (1e-6), identical 1.0, orthogonal 0.0 (1e-12)"):
        half = np.sqrt(2) / 2
        mixed = mean_pairwise_cosine([[1, 0], [0, 1], [half, half]])
        assert mixed == pytest.approx(0.47140452, abs=1e-6)
        assert mean_pairwise_cosine([[2.0, 1.0]] * 6) == pytest.approx(1.0, abs=1e-12)
        assert mean_pairwise_cosine(np.eye(5)) == pytest.approx(0.0, abs=1e-12)


def test_eval_sweep_bit_identical(tmp_path, corpus_vocab_path, stub_server):
    """Full chunk-size sweep against a deterministic stub is bit-identical."""
    with criterion("eval sweep over {4..512} with stub embedder, bit-identical twice"):
        ds, _, _ = _retrieval_dataset(12, 40, 20, seed=67)
        dataset_path = tmp_path / "dataset.json"
        dataset_path.write_text(json.dumps({
            "passages": [{"id": p.id, "text": p.text} for p in ds.passages],
            "questions": [
                {"id": q.id, "text": q.text, "passage_id": q.passage_id} for q in ds.questions
            ],
        }, ensure_ascii=False), encoding="utf-8")

        server = stub_server(dim=24)
        argv = [
            sys.executable, "-m", "hecele", "eval",
            "--dataset", str(dataset_path), "--vocab", corpus_vocab_path,
            "--embedder", "remote", "--endpoint", server.endpoint, "--dim", "24",
            "--chunk-sizes", ",".join(str(s) for s in SWEEP_SIZES),
            "--batch-size", "32", "--threads", "3", "--k", "5",
        ]
        first = subprocess.run(argv, capture_output=True, timeout=300)
        second = subprocess.run(argv, capture_output=True, timeout=300)
        assert first.returncode == 0, first.stderr.decode()
        assert second.returncode == 0, second.stderr.decode()
        assert first.stdout == second.stdout
        lines = first.stdout.decode("utf-8").splitlines()
        assert len([l for l in lines if l and not l.startswith("#")]) == 1 + len(SWEEP_SIZES)
