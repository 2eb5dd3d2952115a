/**
 * Transport-independent request handling: envelope in, envelope out.
 *
 * Capabilities mirror the configuration; asking for an unconfigured one
 * yields an `unsupported` error payload. In deterministic mode (the
 * default) repeated identical requests return identical responses; the
 * bundled file-backed models satisfy that by construction, and any
 * future sampled backend must respect the flag.
 */

import { ServerConfig } from "./config";
import { LinearModel } from "./linearModel";
import {
  Kind,
  RequestEnvelope,
  ResponseEnvelope,
  errorPayload,
  payloadSchemas,
  respond,
} from "./protocol";
import { tokenOverlapScore } from "./semantic";
import { SynonymTable } from "./substitutes";

export class ModelService {
  readonly config: ServerConfig;
  private victim?: LinearModel;
  private infill?: SynonymTable;
  private scorer?: (a: string, b: string) => number;

  constructor(config: ServerConfig) {
    this.config = config;
    if (config.victim_model) this.victim = LinearModel.load(config.victim_model);
    if (config.infill_model) this.infill = SynonymTable.load(config.infill_model);
    if (config.scorer_model) {
      if (config.scorer_model !== "token-overlap") {
        throw new Error(
          `unknown scorer backend "${config.scorer_model}"; this build bundles "token-overlap"`,
        );
      }
      this.scorer = tokenOverlapScore;
    }
  }

  capabilities(): Kind[] {
    const kinds: Kind[] = [];
    if (this.victim) kinds.push("classify");
    if (this.infill) kinds.push("substitutes");
    if (this.scorer) kinds.push("semantic");
    return kinds;
  }

  /** Parse one raw request line; null means "not even an envelope" (HTTP 400). */
  parse(raw: string): RequestEnvelope | null {
    let data: unknown;
    try {
      data = JSON.parse(raw);
    } catch {
      return null;
    }
    const envelope = RequestEnvelope.safeParse(data);
    return envelope.success ? envelope.data : null;
  }

  handle(envelope: RequestEnvelope): ResponseEnvelope {
    const { kind, id } = envelope;
    const payload = payloadSchemas[kind].safeParse(envelope.payload);
    if (!payload.success) {
      return respond(kind, id, errorPayload("invalid_payload", payload.error.message));
    }
    switch (kind) {
      case "classify": {
        if (!this.victim) {
          return respond(kind, id, errorPayload("unsupported", "no victim model configured"));
        }
        const { texts } = payload.data as { texts: string[] };
        if (texts.length > this.config.batch_limit) {
          return respond(kind, id, errorPayload(
            "batch_too_large", `batch limit is ${this.config.batch_limit}`));
        }
        const scores = texts.map((t) => this.victim!.classify(t));
        return respond(kind, id, { scores });
      }
      case "substitutes": {
        if (!this.infill) {
          return respond(kind, id, errorPayload("unsupported", "no infill model configured"));
        }
        const { tokens, mask_position, k } = payload.data as {
          tokens: string[];
          mask_position: number;
          k: number;
        };
        return respond(kind, id, {
          candidates: this.infill.candidates(tokens, mask_position, k),
        });
      }
      case "semantic": {
        if (!this.scorer) {
          return respond(kind, id, errorPayload("unsupported", "no scorer configured"));
        }
        const { a, b } = payload.data as { a: string; b: string };
        return respond(kind, id, { score: this.scorer(a, b) });
      }
    }
  }
}
