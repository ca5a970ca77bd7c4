"""Command-line front end: syllabify, build-vocab, encode, decode, stats, chunk, eval.

Text subcommands stream line by line so corpus-sized inputs run in constant
memory.  Exit codes: 0 success, 1 usage error, 2 data or IO error,
3 embedding-backend error; every failure prints one diagnostic line to
stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from typing import IO, Iterator, NoReturn

from . import __version__
from .chunking import ChunkSpec, chunk_tokens, default_retrieval_stride
from .codec import Mode, decode, encode, hyphenate
from .retrieval import (
    DatasetError,
    EmbeddingServiceError,
    EvalDataset,
    RemoteEmbedder,
    TfidfEmbedder,
    build_index,
    mean_pairwise_cosine,
    recall_at_k,
)
from .stats import DensityStats, density
from .vocab import VocabError, build_vocab, load_vocab, save_vocab

DEFAULT_CHUNK_SIZES = "4,6,8,12,16,32,64,128,512"


class UsageError(Exception):
    """Bad flag combination detected after argparse (maps to exit 1)."""


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is exit 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise SystemExit2(1, f"{self.prog}: error: {message}")


class SystemExit2(SystemExit):
    """SystemExit carrying a diagnostic message for run() to print."""

    def __init__(self, code: int, message: str | None = None):
        super().__init__(code)
        self.message = message


@contextlib.contextmanager
def _open_text(path: str, mode: str) -> Iterator[IO[str]]:
    """Open path for text IO; '-' means the standard stream."""
    if path == "-":
        yield sys.stdin if mode == "r" else sys.stdout
        return
    with open(path, mode, encoding="utf-8") as f:
        yield f


def _stream_lines(inp: IO[str]) -> Iterator[str]:
    for line in inp:
        yield line.rstrip("\n")


def _parse_mode(name: str) -> Mode:
    return Mode.LOSSLESS if name == "lossless" else Mode.FLAT


def _emit(out: IO[str], line: str) -> None:
    out.write(line + "\n")
    # Interactive and pipe consumers (including the bindings package) rely on
    # one-line-in/one-line-out behavior, so stdout is flushed per line.
    if out is sys.stdout:
        out.flush()


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", "-i", default="-", help="input file, '-' for stdin (default)")
    p.add_argument("--output", "-o", default="-", help="output file, '-' for stdout (default)")


def cmd_syllabify(args: argparse.Namespace) -> int:
    with _open_text(args.input, "r") as inp, _open_text(args.output, "w") as out:
        for line in _stream_lines(inp):
            _emit(out, hyphenate(line))
    return 0


def cmd_encode(args: argparse.Namespace) -> int:
    vocab = load_vocab(args.vocab)
    mode = _parse_mode(args.mode)
    with _open_text(args.input, "r") as inp, _open_text(args.output, "w") as out:
        for line in _stream_lines(inp):
            encoding = encode(line, vocab, mode)
            _emit(out, json.dumps({"ids": encoding.ids}))
    return 0


def cmd_decode(args: argparse.Namespace) -> int:
    vocab = load_vocab(args.vocab)
    mode = _parse_mode(args.mode)
    with _open_text(args.input, "r") as inp, _open_text(args.output, "w") as out:
        for lineno, line in enumerate(_stream_lines(inp), start=1):
            if not line.strip():
                continue
            record = json.loads(line)
            if not isinstance(record, dict) or not isinstance(record.get("ids"), list):
                raise ValueError(f'line {lineno}: expected an object with an "ids" array')
            _emit(out, decode(record["ids"], vocab, mode))
    return 0


def cmd_build_vocab(args: argparse.Namespace) -> int:
    with open(args.corpus, "r", encoding="utf-8") as f:
        vocab = build_vocab(_stream_lines(f), workers=args.threads)
    save_vocab(vocab, args.output)
    print(f"wrote {args.output}: {len(vocab)} tokens, {vocab.num_syllable_types} syllable types")
    if args.report:
        from .report import render_vocab_report

        for path in render_vocab_report(args.report, list(vocab.items())):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    vocab = load_vocab(args.vocab) if args.vocab else None
    with open(args.corpus, "r", encoding="utf-8") as f:
        stats = density(_stream_lines(f), vocab)
    _print_stats(stats)
    if args.report:
        from .report import render_stats_report

        for path in render_stats_report(args.report, stats):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _print_stats(stats: DensityStats) -> None:
    print(f"words\t{stats.word_count}")
    print(f"tokens\t{stats.token_count}")
    print(f"chars\t{stats.char_count}")
    print(f"syllables\t{stats.syllable_count}")
    print(f"tokens_per_word\t{stats.tokens_per_word:.4f}")
    print(f"tokens_per_char\t{stats.tokens_per_char:.4f}")
    print(f"syllables_per_word\t{stats.syllables_per_word:.4f}")


def cmd_chunk(args: argparse.Namespace) -> int:
    vocab = load_vocab(args.vocab) if args.vocab else None
    stride = args.stride if args.stride is not None else default_retrieval_stride(args.size)
    spec = ChunkSpec(size=args.size, stride=stride)
    with _open_text(args.input, "r") as inp, _open_text(args.output, "w") as out:
        for lineno, line in enumerate(_stream_lines(inp), start=1):
            if not line.strip():
                continue
            record = json.loads(line)
            if not isinstance(record, dict):
                raise ValueError(f"line {lineno}: expected a JSON object per line")
            if isinstance(record.get("ids"), list):
                ids = record["ids"]
            elif isinstance(record.get("text"), str):
                if vocab is None:
                    raise ValueError(f"line {lineno}: text records require --vocab")
                ids = encode(record["text"], vocab, Mode.FLAT).ids
            else:
                raise ValueError(f'line {lineno}: record needs an "ids" array or a "text" string')
            for chunk in chunk_tokens(ids, spec, passage_id=record.get("id")):
                _emit(out, json.dumps({"passage_id": chunk.passage_id, "start": chunk.start, "ids": chunk.ids}))
    return 0


def _make_embedder(args: argparse.Namespace, index_sequences: list[list[int]], vocab) -> "TfidfEmbedder | RemoteEmbedder":
    if args.embedder == "tfidf":
        return TfidfEmbedder(index_sequences, vocab)
    if not args.endpoint:
        raise UsageError("--embedder remote requires --endpoint")
    if not args.dim:
        raise UsageError("--embedder remote requires --dim")
    return RemoteEmbedder(
        args.endpoint,
        args.dim,
        batch_size=args.batch_size,
        max_in_flight=max(1, args.threads),
    )


def cmd_eval(args: argparse.Namespace) -> int:
    dataset = EvalDataset.from_file(args.dataset)
    vocab = load_vocab(args.vocab)
    sizes = [int(s) for s in args.chunk_sizes.split(",") if s.strip()]
    if not sizes:
        raise UsageError("--chunk-sizes must list at least one size")
    if args.embedder == "remote":
        if not args.endpoint:
            raise UsageError("--embedder remote requires --endpoint")
        if not args.dim:
            raise UsageError("--embedder remote requires --dim")

    passage_ids = [encode(p.text, vocab, Mode.FLAT).ids for p in dataset.passages]
    spw = density((p.text for p in dataset.passages)).syllables_per_word

    header = f"chunk_size\tapprox_words\tnum_chunks\trecall_at_{args.k}"
    print(header)
    rows: list[tuple[int, float, int, float]] = []
    for size in sizes:
        spec = ChunkSpec(size=size, stride=default_retrieval_stride(size))
        chunk_sequences = [
            chunk.ids for ids in passage_ids for chunk in chunk_tokens(ids, spec)
        ]
        embedder = _make_embedder(args, chunk_sequences, vocab)
        index = build_index(dataset, vocab, spec, embedder)
        result = recall_at_k(
            dataset, index, embedder, vocab, args.k, dedup_passages=args.dedup_passages
        )
        approx_words = size / spw if spw > 0 else 0.0
        rows.append((size, approx_words, result.num_chunks, result.recall_at_k))
        print(f"{size}\t{approx_words:.1f}\t{result.num_chunks}\t{result.recall_at_k:.4f}")
        sys.stdout.flush()

    if len(dataset.passages) >= 2:
        embedder = _make_embedder(args, passage_ids, vocab)
        diag = mean_pairwise_cosine(embedder.embed_batch(passage_ids))
        print(f"# passage_embedding_mean_pairwise_cosine\t{diag:.4f}")

    if args.report:
        from .report import render_eval_report

        for path in render_eval_report(args.report, rows, args.k):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hecele", description="Turkish syllable tokenizer and retrieval harness")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("syllabify", help="hyphenate words syllable by syllable, line by line")
    _add_io_flags(p)
    p.set_defaults(func=cmd_syllabify)

    p = sub.add_parser("build-vocab", help="count syllable tokens in a corpus and write a vocabulary file")
    p.add_argument("--corpus", required=True, help="corpus text file, one document per line")
    p.add_argument("--output", "-o", required=True, help="vocabulary file to write")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="parallel counting workers")
    p.add_argument("--report", metavar="DIR", help="also write frequencies.tsv and a rank/frequency plot")
    p.set_defaults(func=cmd_build_vocab)

    p = sub.add_parser("encode", help="encode text lines to token-id records")
    p.add_argument("--vocab", required=True, help="vocabulary file")
    p.add_argument("--mode", choices=["flat", "lossless"], default="flat")
    _add_io_flags(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode token-id records back to text lines")
    p.add_argument("--vocab", required=True, help="vocabulary file")
    p.add_argument("--mode", choices=["flat", "lossless"], default="flat")
    _add_io_flags(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("stats", help="token-density statistics over a corpus")
    p.add_argument("--corpus", required=True, help="corpus text file, one document per line")
    p.add_argument("--vocab", help="vocabulary file (optional, accepted for symmetry)")
    p.add_argument("--report", metavar="DIR", help="also write density.tsv and a bar chart")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("chunk", help="split token-id records into overlapping windows")
    p.add_argument("--size", type=int, required=True, help="tokens per window")
    p.add_argument("--stride", type=int, help="window start step (default: size // 2)")
    p.add_argument("--vocab", help="vocabulary file, required when records carry text")
    _add_io_flags(p)
    p.set_defaults(func=cmd_chunk)

    p = sub.add_parser("eval", help="Recall@k retrieval evaluation over chunk sizes")
    p.add_argument("--dataset", required=True, help="dataset file with passages and questions")
    p.add_argument("--vocab", required=True, help="vocabulary file")
    p.add_argument("--embedder", choices=["tfidf", "remote"], default="tfidf")
    p.add_argument("--endpoint", help="embedding service base URL (remote embedder)")
    p.add_argument("--dim", type=int, help="embedding dimension promised by the service (remote embedder)")
    p.add_argument("--k", type=int, default=5, help="retrieval depth (default 5)")
    p.add_argument("--chunk-sizes", default=DEFAULT_CHUNK_SIZES, help="comma-separated window sizes")
    p.add_argument("--batch-size", type=int, default=32, help="sequences per embedding request")
    p.add_argument("--threads", type=int, default=1, help="in-flight embedding requests (remote embedder)")
    p.add_argument("--dedup-passages", action="store_true", help="rank distinct passages instead of raw chunks")
    p.add_argument("--report", metavar="DIR", help="also write eval_results.tsv and a recall curve")
    p.set_defaults(func=cmd_eval)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse argv, dispatch, and map failures onto the exit-code contract."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit2 as exc:
        if exc.message:
            print(exc.message, file=sys.stderr)
        return int(exc.code or 0)
    except SystemExit as exc:  # argparse --help/--version
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"hecele: error: {exc}", file=sys.stderr)
        return 1
    except EmbeddingServiceError as exc:
        print(f"hecele: embedding backend error: {exc}", file=sys.stderr)
        return 3
    except (VocabError, DatasetError, OSError, ValueError) as exc:
        print(f"hecele: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
