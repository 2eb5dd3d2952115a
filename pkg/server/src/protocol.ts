/**
 * Wire protocol envelopes, version 1.
 *
 * One JSON object per message. Requests and responses share the id;
 * payloads are validated against the kind's schema before any model
 * runs. The byte-exact schema with examples lives in ../docs/protocol.md
 * of the engine repository.
 */

import { z } from "zod";

export const PROTOCOL_VERSION = "1";

export const Kind = z.enum(["classify", "substitutes", "semantic"]);
export type Kind = z.infer<typeof Kind>;

export const ClassifyPayload = z.object({
  texts: z.array(z.string()).min(1),
});

export const SubstitutesPayload = z
  .object({
    tokens: z.array(z.string()).min(1),
    mask_position: z.number().int().min(0),
    k: z.number().int().min(1),
  })
  .refine((p) => p.mask_position < p.tokens.length, {
    message: "mask_position out of bounds",
  });

export const SemanticPayload = z.object({
  a: z.string(),
  b: z.string(),
});

export const RequestEnvelope = z.object({
  version: z.literal(PROTOCOL_VERSION),
  kind: Kind,
  id: z.string(),
  payload: z.record(z.string(), z.unknown()),
});
export type RequestEnvelope = z.infer<typeof RequestEnvelope>;

export interface Candidate {
  token: string;
  score: number;
}

export type ResponsePayload =
  | { scores: [number, number][] }
  | { candidates: Candidate[] }
  | { score: number }
  | { error: string; message: string };

export interface ResponseEnvelope {
  version: typeof PROTOCOL_VERSION;
  kind: Kind;
  id: string;
  payload: ResponsePayload;
}

export function respond(kind: Kind, id: string, payload: ResponsePayload): ResponseEnvelope {
  return { version: PROTOCOL_VERSION, kind, id, payload };
}

export function errorPayload(error: string, message: string): ResponsePayload {
  return { error, message };
}

export const payloadSchemas = {
  classify: ClassifyPayload,
  substitutes: SubstitutesPayload,
  semantic: SemanticPayload,
} as const;
