"""Report rendering: delimited tables plus matplotlib figures on disk.

Each CLI report writes a TSV next to a PNG in the requested directory, so
results can be diffed in version control and eyeballed without rerunning.
All rendering uses the Agg backend; nothing here opens a window.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.ticker import ScalarFormatter

from .stats import DensityStats


def _ensure_dir(directory: str) -> None:
    os.makedirs(directory, exist_ok=True)


def _write_tsv(path: str, header: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write("\t".join(header) + "\n")
        for row in rows:
            f.write("\t".join(str(cell) for cell in row) + "\n")


def render_eval_report(
    directory: str,
    rows: Sequence[tuple[int, float, int, float]],
    k: int,
) -> list[str]:
    """Write eval_results.tsv and a recall-vs-chunk-size curve.

    Rows are (chunk_size, approx_words, num_chunks, recall) and come in the
    order they were evaluated.  Returns the paths written.
    """
    _ensure_dir(directory)
    tsv_path = os.path.join(directory, "eval_results.tsv")
    _write_tsv(
        tsv_path,
        ["chunk_size", "approx_words", "num_chunks", f"recall_at_{k}"],
        [(size, f"{words:.1f}", n, f"{recall:.4f}") for size, words, n, recall in rows],
    )

    png_path = os.path.join(directory, "recall_vs_chunk_size.png")
    sizes = [r[0] for r in rows]
    recalls = [r[3] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(sizes, recalls, marker="o")
    ax.set_xscale("log", base=2)
    ax.set_xticks(sizes)
    ax.get_xaxis().set_major_formatter(ScalarFormatter())
    ax.set_xlabel("chunk size (tokens)")
    ax.set_ylabel(f"recall@{k}")
    ax.set_title(f"Recall@{k} by chunk size")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [tsv_path, png_path]


def render_vocab_report(
    directory: str,
    frequencies: Sequence[tuple[str, int, int]],
) -> list[str]:
    """Write frequencies.tsv and a log-log rank/frequency plot.

    Frequencies are (token, id, count) in id order, specials included with
    zero counts; the plot skips zero-count entries.
    """
    _ensure_dir(directory)
    tsv_path = os.path.join(directory, "frequencies.tsv")
    _write_tsv(tsv_path, ["token", "id", "count"], frequencies)

    png_path = os.path.join(directory, "rank_frequency.png")
    counts = sorted((c for _, _, c in frequencies if c > 0), reverse=True)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if counts:
        ax.loglog(range(1, len(counts) + 1), counts)
    ax.set_xlabel("rank")
    ax.set_ylabel("frequency")
    ax.set_title(f"Token rank/frequency ({len(counts)} types)")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [tsv_path, png_path]


def render_stats_report(directory: str, stats: DensityStats) -> list[str]:
    """Write density.tsv and a bar chart of the three density ratios."""
    _ensure_dir(directory)
    tsv_path = os.path.join(directory, "density.tsv")
    _write_tsv(
        tsv_path,
        ["metric", "value"],
        [
            ("words", stats.word_count),
            ("tokens", stats.token_count),
            ("chars", stats.char_count),
            ("syllables", stats.syllable_count),
            ("tokens_per_word", f"{stats.tokens_per_word:.4f}"),
            ("tokens_per_char", f"{stats.tokens_per_char:.4f}"),
            ("syllables_per_word", f"{stats.syllables_per_word:.4f}"),
        ],
    )

    png_path = os.path.join(directory, "density.png")
    labels = ["tokens/word", "tokens/char", "syllables/word"]
    values = [stats.tokens_per_word, stats.tokens_per_char, stats.syllables_per_word]
    fig, ax = plt.subplots(figsize=(6, 4))
    bars = ax.bar(labels, values, color=["#4c72b0", "#dd8452", "#55a868"])
    ax.bar_label(bars, fmt="%.3f")
    ax.set_ylabel("ratio")
    ax.set_title("Token density")
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [tsv_path, png_path]
