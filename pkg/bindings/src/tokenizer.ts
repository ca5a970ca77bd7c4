import { readFile } from "node:fs/promises";

import { LinePipe } from "./pipe.js";

/** Encoding mode: flat drops word boundaries, lossless keeps them as [WB] tokens. */
export type Mode = "flat" | "lossless";

/** One sliding window over a token id sequence. */
export interface ChunkWindow {
  start: number;
  ids: number[];
}

/** Summary of a loaded vocabulary file. */
export interface VocabInfo {
  format: string;
  version: number;
  specials: string[];
  /** Total id count: special tokens plus corpus tokens. */
  numTokens: number;
}

export interface TokenizerOptions {
  /**
   * Command used to launch the tokenizer CLI, as argv. Defaults to the
   * HECELE_COMMAND environment variable (split on whitespace) when set,
   * otherwise ["python3", "-m", "hecele"].
   */
  command?: string[];
}

/** Raised when a vocabulary file does not match the documented JSON schema. */
export class VocabFormatError extends Error {}

const VOCAB_FORMAT = "syllable-vocab";
const VOCAB_VERSION = 1;

/**
 * Chunk responses carry a variable number of lines, so each request is
 * followed by a one-window flush record whose passage id marks the end.
 * A record with at most `size` ids always yields exactly one window.
 */
const FLUSH_ID = "flush";

function defaultCommand(): string[] {
  const fromEnv = process.env.HECELE_COMMAND;
  if (fromEnv !== undefined && fromEnv.trim() !== "") {
    return fromEnv.trim().split(/\s+/);
  }
  return ["python3", "-m", "hecele"];
}

function checkText(text: string): string {
  if (/[\r\n]/.test(text)) {
    throw new RangeError("text must not contain line breaks");
  }
  return text;
}

function checkIds(ids: number[]): void {
  if (!Array.isArray(ids) || !ids.every((v) => Number.isInteger(v) && v >= 0)) {
    throw new TypeError("ids must be an array of non-negative integers");
  }
}

function validateVocab(data: unknown, path: string): VocabInfo {
  if (typeof data !== "object" || data === null || Array.isArray(data)) {
    throw new VocabFormatError(`${path}: vocabulary file must be a JSON object`);
  }
  const record = data as Record<string, unknown>;
  if (record.format !== VOCAB_FORMAT || record.version !== VOCAB_VERSION) {
    throw new VocabFormatError(
      `${path}: expected format "${VOCAB_FORMAT}" version ${VOCAB_VERSION}`,
    );
  }
  const specials = record.specials;
  if (!Array.isArray(specials) || !specials.every((s) => typeof s === "string")) {
    throw new VocabFormatError(`${path}: "specials" must be an array of strings`);
  }
  const tokens = record.tokens;
  if (!Array.isArray(tokens)) {
    throw new VocabFormatError(`${path}: "tokens" must be an array`);
  }
  for (const entry of tokens) {
    const token = entry as Record<string, unknown>;
    if (
      typeof entry !== "object" || entry === null ||
      typeof token.text !== "string" ||
      !Number.isInteger(token.id) ||
      !Number.isInteger(token.count)
    ) {
      throw new VocabFormatError(
        `${path}: token records must carry {text, id, count}`,
      );
    }
  }
  return {
    format: VOCAB_FORMAT,
    version: VOCAB_VERSION,
    specials: specials as string[],
    numTokens: specials.length + tokens.length,
  };
}

/**
 * A loaded vocabulary bound to the tokenizer CLI.
 *
 * Every operation delegates to a `hecele` subcommand; nothing is
 * re-implemented here. Single-line commands (syllabify, encode, decode)
 * run as persistent child processes fed one line per call, so repeated
 * calls avoid interpreter start-up. The tokenizer is immutable after
 * load and safe to share; concurrent calls are answered in order.
 */
export class BoundTokenizer {
  readonly vocabPath: string;
  readonly info: VocabInfo;
  private readonly command: string[];
  private readonly pipes = new Map<string, LinePipe>();
  private closed = false;

  private constructor(vocabPath: string, info: VocabInfo, command: string[]) {
    this.vocabPath = vocabPath;
    this.info = info;
    this.command = command;
  }

  /** Reads and validates a vocabulary file, then binds it to the CLI. */
  static async load(vocabPath: string, options: TokenizerOptions = {}): Promise<BoundTokenizer> {
    const raw = await readFile(vocabPath, "utf8");
    let data: unknown;
    try {
      data = JSON.parse(raw);
    } catch {
      throw new VocabFormatError(`${vocabPath}: vocabulary file is not valid JSON`);
    }
    const info = validateVocab(data, vocabPath);
    return new BoundTokenizer(vocabPath, info, options.command ?? defaultCommand());
  }

  /** Hyphen-delimited form: syllables joined by "-", words by spaces. */
  async hyphenate(text: string): Promise<string> {
    const [line] = await this.pipe("syllabify", ["syllabify"])
      .request([checkText(text)], () => true);
    return line;
  }

  /** Syllable strings of the normalized text, in reading order. */
  async syllabify(text: string): Promise<string[]> {
    const joined = await this.hyphenate(text);
    if (joined === "") {
      return [];
    }
    return joined.split(" ").flatMap((word) => word.split("-"));
  }

  /** Token ids for the text under the given mode. */
  async encode(text: string, mode: Mode = "flat"): Promise<number[]> {
    const pipe = this.pipe(`encode:${mode}`, [
      "encode", "--vocab", this.vocabPath, "--mode", mode,
    ]);
    const [line] = await pipe.request([checkText(text)], () => true);
    return (JSON.parse(line) as { ids: number[] }).ids;
  }

  /** Text reconstructed from token ids under the given mode. */
  async decode(ids: number[], mode: Mode = "flat"): Promise<string> {
    checkIds(ids);
    const pipe = this.pipe(`decode:${mode}`, [
      "decode", "--vocab", this.vocabPath, "--mode", mode,
    ]);
    const [line] = await pipe.request([JSON.stringify({ ids })], () => true);
    return line;
  }

  /**
   * Sliding windows of `size` ids every `stride` ids, with the tail window
   * shifted back to end at the sequence end. When stride is omitted the
   * CLI default (half the window) applies.
   */
  async chunk(ids: number[], size: number, stride?: number): Promise<ChunkWindow[]> {
    checkIds(ids);
    if (!Number.isInteger(size)) {
      throw new TypeError("size must be an integer");
    }
    if (stride !== undefined && !Number.isInteger(stride)) {
      throw new TypeError("stride must be an integer");
    }
    const args = ["chunk", "--size", String(size)];
    if (stride !== undefined) {
      args.push("--stride", String(stride));
    }
    const key = `chunk:${size}:${stride ?? "default"}`;
    const record = JSON.stringify({ id: "r", ids });
    const flush = JSON.stringify({ id: FLUSH_ID, ids: [0] });
    const lines = await this.pipe(key, args).request(
      [record, flush],
      (line) => (JSON.parse(line) as { passage_id: string }).passage_id === FLUSH_ID,
    );
    return lines.slice(0, -1).map((line) => {
      const window = JSON.parse(line) as { start: number; ids: number[] };
      return { start: window.start, ids: window.ids };
    });
  }

  /** Shuts down all child processes; the tokenizer is unusable afterwards. */
  async close(): Promise<void> {
    this.closed = true;
    const open = [...this.pipes.values()];
    this.pipes.clear();
    await Promise.all(open.map((pipe) => pipe.close()));
  }

  private pipe(key: string, args: string[]): LinePipe {
    if (this.closed) {
      throw new Error("tokenizer is closed");
    }
    const existing = this.pipes.get(key);
    if (existing !== undefined && !existing.broken) {
      return existing;
    }
    if (existing !== undefined) {
      void existing.close();
    }
    const fresh = new LinePipe(this.command[0], [...this.command.slice(1), ...args]);
    this.pipes.set(key, fresh);
    return fresh;
  }
}
