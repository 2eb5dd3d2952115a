/**
 * Substitute provider backed by a synonym table file:
 * `token<TAB>syn1,syn2,...` per line. Scores descend linearly from 1.0
 * over the returned candidates (file order is preference order), which
 * keeps them inside the masked-LM probability range the protocol
 * requires. A `[MASK]` row supplies insert/merge infills.
 */

import * as fs from "node:fs";
import { Candidate } from "./protocol";

export class SynonymTable {
  private table: Map<string, string[]>;

  constructor(table: Map<string, string[]>) {
    this.table = table;
  }

  static load(path: string): SynonymTable {
    const table = new Map<string, string[]>();
    const lines = fs.readFileSync(path, "utf-8").split("\n");
    for (const line of lines) {
      if (!line.trim()) continue;
      const tab = line.indexOf("\t");
      if (tab < 0) throw new Error("synonym lines are token<TAB>syn1,syn2,...");
      const token = line.slice(0, tab);
      const synonyms = line.slice(tab + 1).split(",").filter((s) => s.length > 0);
      table.set(token, synonyms);
    }
    return new SynonymTable(table);
  }

  candidates(tokens: string[], maskPosition: number, k: number): Candidate[] {
    const original = tokens[maskPosition];
    const pool = this.table.get(original) ?? this.table.get(original.toLowerCase()) ?? [];
    const chosen = pool.filter((t) => t !== original).slice(0, k);
    const m = chosen.length;
    return chosen.map((token, i) => ({ token, score: (m - i) / m }));
  }
}
