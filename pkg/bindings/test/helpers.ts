import { execFile } from "node:child_process";
import { mkdtemp } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";

const execFileAsync = promisify(execFile);

/** The tokenizer CLI as argv, matching the bindings' default. */
export const CLI = ["python3", "-m", "hecele"];

/** Runs one CLI invocation to completion and returns its stdout. */
export async function runCli(args: string[], input?: string): Promise<string> {
  const invocation = execFileAsync(CLI[0], [...CLI.slice(1), ...args], {
    maxBuffer: 64 * 1024 * 1024,
  });
  if (input !== undefined) {
    invocation.child.stdin?.write(input);
  }
  invocation.child.stdin?.end();
  const { stdout } = await invocation;
  return stdout;
}

/** Splits captured stdout into lines, dropping the trailing newline. */
export function stdoutLines(stdout: string): string[] {
  const lines = stdout.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  return lines;
}

export async function makeTempDir(): Promise<string> {
  return mkdtemp(join(tmpdir(), "hecele-node-"));
}
