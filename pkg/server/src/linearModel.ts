/**
 * The bundled lightweight classifier: a bag-of-words logistic regression
 * loaded from the engine's `linear-victim v1` text format. Deterministic
 * by construction, so the server's deterministic mode is a no-op for it.
 */

import * as fs from "node:fs";
import { tokenize } from "./tokenize";

const HEADER = "linear-victim v1";

export class LinearModel {
  private vocabulary: Map<string, number>;
  private weights: Float64Array;
  private bias: number;
  readonly maxTokens: number;

  constructor(vocabulary: Map<string, number>, weights: Float64Array, bias: number, maxTokens = 512) {
    this.vocabulary = vocabulary;
    this.weights = weights;
    this.bias = bias;
    this.maxTokens = maxTokens;
  }

  static load(path: string): LinearModel {
    const lines = fs.readFileSync(path, "utf-8").split("\n");
    if (lines[0] !== HEADER) {
      throw new Error(`expected header "${HEADER}" in ${path}`);
    }
    const count = Number(lines[1].split(" ")[1]);
    if (!Number.isInteger(count) || count < 0) {
      throw new Error("malformed vocabulary count");
    }
    const vocabulary = new Map<string, number>();
    for (const line of lines.slice(2, 2 + count)) {
      const tab = line.indexOf("\t");
      if (tab < 0) throw new Error("malformed vocabulary line");
      vocabulary.set(line.slice(0, tab), Number(line.slice(tab + 1)));
    }
    const biasLine = lines[2 + count];
    if (!biasLine?.startsWith("bias ")) throw new Error("missing bias line");
    const bias = Number(biasLine.slice("bias ".length));
    if (lines[3 + count] !== "weights") throw new Error("missing weights section");
    const weights = new Float64Array(count);
    for (let i = 0; i < count; i++) {
      const value = Number(lines[4 + count + i]);
      if (Number.isNaN(value)) throw new Error(`malformed weight at index ${i}`);
      weights[i] = value;
    }
    return new LinearModel(vocabulary, weights, bias);
  }

  /** Probability pair [p_credible, p_noncredible]; pairs sum to 1 exactly. */
  classify(text: string): [number, number] {
    let z = this.bias;
    const tokens = tokenize(text).slice(0, this.maxTokens);
    for (const token of tokens) {
      const index = this.vocabulary.get(token.toLowerCase());
      if (index !== undefined) z += this.weights[index];
    }
    const p = z >= 0 ? 1 / (1 + Math.exp(-z)) : Math.exp(z) / (1 + Math.exp(z));
    return [1 - p, p];
  }
}
