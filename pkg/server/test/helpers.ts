import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

export function tempDir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "model-server-"));
}

/** Tiny hand-written victim: "bad" pushes non-credible, "good" credible. */
export function writeModelFile(dir: string): string {
  const file = path.join(dir, "victim.lv");
  const lines = [
    "linear-victim v1",
    "vocab 2",
    "bad\t0",
    "good\t1",
    "bias -0.25",
    "weights",
    "2.0",
    "-2.0",
    "",
  ];
  fs.writeFileSync(file, lines.join("\n"));
  return file;
}

export function writeSynonymFile(dir: string): string {
  const file = path.join(dir, "synonyms.tsv");
  fs.writeFileSync(file, "athlete\tmaid,cook\n[MASK]\treally,quite\n");
  return file;
}

export function envelope(kind: string, id: string, payload: unknown): string {
  return JSON.stringify({ version: "1", kind, id, payload });
}
