#!/usr/bin/env node
/**
 * Entry point: `credattack-server serve --config config.json [--port N]`.
 *
 * The config file names the capabilities to serve; see config.ts. On
 * startup the bound address and capabilities are printed as one JSON
 * line so callers can scrape the port when using port 0.
 */

import { loadConfig } from "./config";
import { listen } from "./server";
import { ModelService } from "./service";

function fail(message: string): never {
  process.stderr.write(message + "\n");
  process.exit(1);
}

async function main(argv: string[]): Promise<void> {
  if (argv[0] !== "serve") {
    fail("usage: credattack-server serve --config <path> [--port <n>]");
  }
  let configPath: string | undefined;
  let portOverride: number | undefined;
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (flag === "--config") configPath = value;
    else if (flag === "--port") portOverride = Number(value);
    else fail(`unknown flag ${flag}`);
  }
  if (!configPath) fail("--config is required");
  const config = loadConfig(configPath);
  const service = new ModelService(config);
  const port = portOverride ?? config.port;
  const server = await listen(service, port);
  const address = server.address();
  const boundPort = typeof address === "object" && address ? address.port : port;
  process.stdout.write(
    JSON.stringify({
      listening: `http://127.0.0.1:${boundPort}`,
      capabilities: service.capabilities(),
      deterministic: config.deterministic,
    }) + "\n",
  );
}

main(process.argv.slice(2)).catch((err) => fail(String(err?.message ?? err)));
