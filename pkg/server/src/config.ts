/**
 * Server configuration.
 *
 * Each capability is optional, but at least one must be configured; the
 * served endpoints match exactly what is configured. The bundled
 * backends are file-based so CI needs no model downloads; heavier
 * ML-ecosystem backends are opt-in by pointing an entry at a backend
 * the deployment provides (anything unrecognized is reported, not
 * guessed at).
 */

import * as fs from "node:fs";
import { z } from "zod";

export const ServerConfig = z
  .object({
    victim_model: z.string().optional(),
    infill_model: z.string().optional(),
    scorer_model: z.string().optional(),
    device: z.string().default("cpu"),
    batch_limit: z.number().int().min(1).default(64),
    deterministic: z.boolean().default(true),
    port: z.number().int().min(0).default(8471),
  })
  .refine((c) => c.victim_model || c.infill_model || c.scorer_model, {
    message: "configure at least one of victim_model, infill_model, scorer_model",
  });

export type ServerConfig = z.infer<typeof ServerConfig>;

export function loadConfig(path: string): ServerConfig {
  const parsed = JSON.parse(fs.readFileSync(path, "utf-8"));
  return ServerConfig.parse(parsed);
}
