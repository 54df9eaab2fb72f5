/** End-to-end parity: the UI data layer (filter state -> query -> fetch)
 * must return exactly the ids the HTTP API returns for an independently
 * hand-written equivalent query, and the offline bundle path must agree
 * with the live API. Spawns the real server from the bundled seed. */

import { afterAll, beforeAll, describe, expect, test } from "vitest";
import { spawn, spawnSync, type ChildProcessWithoutNullStreams } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { ApiSource, BundleSource } from "../src/api.js";
import { renderEntryDetail, renderSidebar } from "../src/render.js";
import { emptyState } from "../src/state.js";
import type { CatalogFile, EntryJson, NameRecord, StatsPayload } from "../src/types.js";
import { SCRIPTED } from "./states.js";

const HERE = path.dirname(fileURLToPath(import.meta.url));
const ROOT = path.resolve(HERE, "../..");
const PY_ENV = { ...process.env, PYTHONPATH: path.join(ROOT, "src") };

let server: ChildProcessWithoutNullStreams;
let base = "";
let bundle: BundleSource;

async function directIds(query: string): Promise<string[]> {
  const response = await fetch(`${base}/techniques?q=${encodeURIComponent(query)}`);
  expect(response.status).toBe(200);
  const payload = (await response.json()) as { items: { id: string }[] };
  return payload.items.map((item) => item.id);
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-u", "-m", "authn_catalog.cli_service", "serve", "--address", "127.0.0.1:0"],
    { cwd: ROOT, env: PY_ENV },
  );
  base = await new Promise<string>((resolve, reject) => {
    let buffer = "";
    const timer = setTimeout(
      () => reject(new Error(`server start timeout\n${buffer}`)),
      15000,
    );
    server.stdout.on("data", (chunk: Buffer) => {
      buffer += chunk.toString();
      const match = buffer.match(/http:\/\/([0-9.]+):(\d+)\/api/);
      if (match) {
        clearTimeout(timer);
        resolve(`http://${match[1]}:${match[2]}/api`);
      }
    });
    server.stderr.on("data", (chunk: Buffer) => {
      buffer += chunk.toString();
    });
    server.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`server exited with ${code}\n${buffer}`));
    });
  });

  const outDir = mkdtempSync(path.join(tmpdir(), "catalog-bundle-"));
  const exported = spawnSync(
    "python3",
    ["-m", "authn_catalog.cli_service", "export", "--out-dir", outDir],
    { cwd: ROOT, env: PY_ENV },
  );
  expect(exported.status).toBe(0);
  const read = (file: string) =>
    JSON.parse(readFileSync(path.join(outDir, file), "utf-8"));
  bundle = new BundleSource(
    read("catalog.json") as CatalogFile,
    read("names.json") as Record<string, NameRecord>,
    read("stats.json") as StatsPayload,
  );
}, 30000);

afterAll(() => {
  server?.kill();
});

describe("UI result sets equal the API's for the equivalent query", () => {
  for (const scripted of SCRIPTED) {
    test(scripted.name, async () => {
      const ui = new ApiSource(base);
      const payload = await ui.listEntries(scripted.state);
      const uiIds = payload.items.map((item) => item.id);
      expect(uiIds).toEqual(await directIds(scripted.equivalentQuery));
    }, 15000);
  }
});

describe("offline bundle agrees with the live API", () => {
  for (const scripted of SCRIPTED) {
    test(scripted.name, async () => {
      const payload = await bundle.listEntries(scripted.state);
      const offlineIds = payload.items.map((item) => item.id);
      expect(offlineIds).toEqual(await directIds(scripted.equivalentQuery));
    }, 15000);
  }
});

describe("seeded catalog views", () => {
  test("unfiltered technique list has 33 entries", async () => {
    const payload = await new ApiSource(base).listEntries(emptyState());
    expect(payload.total).toBe(33);
  }, 15000);

  test("technique detail lists employments in order with links", async () => {
    const entry = (await bundle.getEntry(
      "techniques",
      "context-aware-touch-authentication",
    )) as EntryJson;
    const schemes = await bundle.getSchemes();
    const html = renderEntryDetail(entry, "techniques", schemes.technique);
    const pin = html.indexOf(">PIN</a>");
    const touch = html.indexOf(">Touch-interaction behavior</a>");
    expect(pin).toBeGreaterThan(-1);
    expect(touch).toBeGreaterThan(pin);
    expect(html).toContain("multi.sequential.ordered|multi-factor");
  });

  test("authenticator detail back-links employing techniques", async () => {
    const entry = (await bundle.getEntry("authenticators", "pin")) as EntryJson;
    expect(entry.employed_by?.map((link) => link.id)).toEqual([
      "context-aware-touch-authentication",
      "pin-authentication",
    ]);
  });

  test("sidebar shows live counts per facet value", async () => {
    const payload = await bundle.listEntries(emptyState());
    const schemes = await bundle.getSchemes();
    const html = renderSidebar(schemes.technique, payload.items, emptyState());
    expect(html).toContain('data-path="multi.parallel"');
    const row = html.slice(html.indexOf('data-path="multi.parallel"'));
    expect(row.slice(0, 300)).toContain('<span class="count">5</span>');
  });
});
