/**
 * HTTP framing over the shared service: POST /v1/<kind> with one
 * envelope per body. Replies carry the response envelope; bodies that
 * are not an envelope at all are answered with HTTP 400. GET /healthz
 * reports the advertised capabilities and the deterministic flag.
 */

import * as http from "node:http";
import { Kind } from "./protocol";
import { ModelService } from "./service";

export function createServer(service: ModelService): http.Server {
  return http.createServer((request, response) => {
    if (request.method === "GET" && request.url === "/healthz") {
      sendJson(response, 200, {
        capabilities: service.capabilities(),
        deterministic: service.config.deterministic,
        device: service.config.device,
        batch_limit: service.config.batch_limit,
      });
      return;
    }
    const match = request.url?.match(/^\/v1\/(classify|substitutes|semantic)$/);
    if (request.method !== "POST" || !match) {
      sendJson(response, 404, { error: "not_found", message: "POST /v1/<kind>" });
      return;
    }
    const urlKind = match[1] as Kind;
    const chunks: Buffer[] = [];
    request.on("data", (chunk) => chunks.push(chunk));
    request.on("end", () => {
      const envelope = service.parse(Buffer.concat(chunks).toString("utf-8"));
      if (envelope === null || envelope.kind !== urlKind) {
        sendJson(response, 400, {
          error: "bad_request",
          message: "body must be a version-1 envelope matching the path kind",
        });
        return;
      }
      const reply = service.handle(envelope);
      sendJson(response, 200, reply);
    });
  });
}

function sendJson(response: http.ServerResponse, status: number, body: unknown): void {
  const encoded = JSON.stringify(body) + "\n";
  response.writeHead(status, {
    "Content-Type": "application/json",
    "Content-Length": Buffer.byteLength(encoded),
  });
  response.end(encoded);
}

export function listen(service: ModelService, port: number): Promise<http.Server> {
  const server = createServer(service);
  return new Promise((resolve, reject) => {
    server.once("error", (err: NodeJS.ErrnoException) => {
      if (err.code === "EADDRINUSE") {
        reject(new Error(`port ${port} already in use; pick another with --port`));
      } else {
        reject(err);
      }
    });
    server.listen(port, "127.0.0.1", () => resolve(server));
  });
}
