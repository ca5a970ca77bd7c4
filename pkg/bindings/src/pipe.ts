import { spawn, type ChildProcessWithoutNullStreams } from "node:child_process";
import { createInterface, type Interface } from "node:readline";

interface PendingRequest {
  /** Consumes one response line; returns true once the request is complete. */
  onLine: (line: string) => boolean;
  resolve: (lines: string[]) => void;
  reject: (err: Error) => void;
  collected: string[];
}

/**
 * A long-lived child process spoken to over a line-oriented pipe.
 *
 * Requests are written as newline-terminated lines and answered in order,
 * so responses are matched to requests FIFO. Each request declares, via a
 * predicate, which response line completes it; most commands answer with
 * exactly one line per input line.
 */
export class LinePipe {
  private readonly child: ChildProcessWithoutNullStreams;
  private readonly lines: Interface;
  private readonly pending: PendingRequest[] = [];
  private readonly stderrChunks: string[] = [];
  private closing = false;
  private failure: Error | null = null;

  constructor(command: string, args: string[]) {
    this.child = spawn(command, args, { stdio: ["pipe", "pipe", "pipe"] });
    this.child.stdin.setDefaultEncoding("utf8");
    this.child.stderr.setEncoding("utf8");
    this.child.stderr.on("data", (chunk: string) => {
      this.stderrChunks.push(chunk);
      if (this.stderrChunks.length > 50) {
        this.stderrChunks.shift();
      }
    });
    this.child.stdin.on("error", () => {
      // Failure is reported through the close handler below.
    });
    this.lines = createInterface({ input: this.child.stdout });
    this.lines.on("line", (line) => this.dispatch(line));
    this.child.on("error", (err) => this.fail(err));
    this.child.on("close", (code) => {
      if (this.pending.length > 0 || !this.closing) {
        const detail = this.stderrChunks.join("").trim();
        this.fail(new Error(
          `tokenizer process exited with code ${code}${detail ? `: ${detail}` : ""}`,
        ));
      }
    });
  }

  /** True once the process has died or errored; a broken pipe never recovers. */
  get broken(): boolean {
    return this.failure !== null;
  }

  /**
   * Writes the given lines and resolves with every response line up to and
   * including the first for which isLast returns true.
   */
  request(input: string[], isLast: (line: string) => boolean): Promise<string[]> {
    if (this.failure) {
      return Promise.reject(this.failure);
    }
    if (this.closing) {
      return Promise.reject(new Error("pipe is closed"));
    }
    for (const line of input) {
      if (/[\r\n]/.test(line)) {
        return Promise.reject(new RangeError("request lines must not contain line breaks"));
      }
    }
    return new Promise((resolve, reject) => {
      this.pending.push({ onLine: isLast, resolve, reject, collected: [] });
      this.child.stdin.write(input.map((line) => `${line}\n`).join(""));
    });
  }

  /** Closes stdin and waits for the process to exit, killing it if it stalls. */
  close(): Promise<void> {
    if (this.closing || this.failure) {
      this.closing = true;
      return Promise.resolve();
    }
    this.closing = true;
    return new Promise((resolve) => {
      const killTimer = setTimeout(() => this.child.kill("SIGKILL"), 5_000);
      this.child.once("close", () => {
        clearTimeout(killTimer);
        resolve();
      });
      this.child.stdin.end();
    });
  }

  private dispatch(line: string): void {
    const current = this.pending[0];
    if (current === undefined) {
      return;
    }
    current.collected.push(line);
    if (current.onLine(line)) {
      this.pending.shift();
      current.resolve(current.collected);
    }
  }

  private fail(err: Error): void {
    if (this.failure === null) {
      this.failure = err;
    }
    while (this.pending.length > 0) {
      const request = this.pending.shift();
      request?.reject(this.failure);
    }
  }
}
