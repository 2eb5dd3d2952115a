/**
 * Word tokenization mirroring the engine: split on whitespace, peel
 * leading/trailing punctuation into separate tokens, keep word-internal
 * punctuation. The linear model additionally lowercases.
 */

const PUNCT = new Set("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~");

export function tokenize(text: string): string[] {
  const tokens: string[] = [];
  for (const chunk of text.split(/\s+/)) {
    if (!chunk) continue;
    let start = 0;
    let end = chunk.length;
    const left: string[] = [];
    const right: string[] = [];
    while (start < end && PUNCT.has(chunk[start])) {
      left.push(chunk[start]);
      start += 1;
    }
    while (end > start && PUNCT.has(chunk[end - 1])) {
      right.unshift(chunk[end - 1]);
      end -= 1;
    }
    tokens.push(...left);
    if (end > start) tokens.push(chunk.slice(start, end));
    tokens.push(...right);
  }
  return tokens;
}
