/**
 * Bundled semantic scorer: token-level F1 over case-folded multiset
 * overlap. Identical texts score 1.0 and every output is in [0, 1], as
 * the protocol demands. A learned metric slots in behind the same
 * signature via the config's scorer entry.
 */

import { tokenize } from "./tokenize";

export function tokenOverlapScore(a: string, b: string): number {
  const tokensA = tokenize(a).map((t) => t.toLowerCase());
  const tokensB = tokenize(b).map((t) => t.toLowerCase());
  if (tokensA.length === 0 || tokensB.length === 0) {
    return tokensA.length === tokensB.length ? 1.0 : 0.0;
  }
  const counts = new Map<string, number>();
  for (const t of tokensA) counts.set(t, (counts.get(t) ?? 0) + 1);
  let overlap = 0;
  for (const t of tokensB) {
    const remaining = counts.get(t) ?? 0;
    if (remaining > 0) {
      counts.set(t, remaining - 1);
      overlap += 1;
    }
  }
  if (overlap === 0) return 0.0;
  const precision = overlap / tokensB.length;
  const recall = overlap / tokensA.length;
  return (2 * precision * recall) / (precision + recall);
}
