/** Data sources: the live HTTP API, with the static export bundle as an
 * offline fallback. Both expose the same interface to the UI. */

import { filterEntries } from "./offline.js";
import { filterQuery } from "./query.js";
import type { FilterState } from "./state.js";
import type {
  CatalogFile,
  EntryJson,
  ListPayload,
  NameRecord,
  SchemesPayload,
  StatsPayload,
  Target,
} from "./types.js";

export interface DataSource {
  readonly kind: "api" | "bundle";
  listEntries(state: FilterState): Promise<ListPayload>;
  getEntry(target: Target, id: string): Promise<EntryJson | null>;
  getSchemes(): Promise<SchemesPayload>;
  getStats(): Promise<StatsPayload>;
}

export class ApiSource implements DataSource {
  readonly kind = "api";

  constructor(readonly base: string) {}

  private async fetchJson(path: string): Promise<unknown> {
    const response = await fetch(`${this.base}${path}`);
    if (!response.ok) {
      throw new Error(`GET ${path}: HTTP ${response.status}`);
    }
    return response.json();
  }

  async listEntries(state: FilterState): Promise<ListPayload> {
    const query = filterQuery(state);
    const suffix = query ? `?q=${encodeURIComponent(query)}` : "";
    return (await this.fetchJson(`/${state.target}${suffix}`)) as ListPayload;
  }

  async getEntry(target: Target, id: string): Promise<EntryJson | null> {
    const response = await fetch(`${this.base}/${target}/${encodeURIComponent(id)}`);
    if (response.status === 404) {
      return null;
    }
    if (!response.ok) {
      throw new Error(`GET /${target}/${id}: HTTP ${response.status}`);
    }
    return (await response.json()) as EntryJson;
  }

  async getSchemes(): Promise<SchemesPayload> {
    return (await this.fetchJson("/schemes")) as SchemesPayload;
  }

  async getStats(): Promise<StatsPayload> {
    return (await this.fetchJson("/stats")) as StatsPayload;
  }
}

export class BundleSource implements DataSource {
  readonly kind = "bundle";

  constructor(
    readonly catalog: CatalogFile,
    readonly names: Record<string, NameRecord>,
    readonly stats: StatsPayload,
  ) {}

  static async load(baseUrl: string): Promise<BundleSource> {
    const [catalog, names, stats] = await Promise.all(
      ["catalog.json", "names.json", "stats.json"].map(async (file) => {
        const response = await fetch(`${baseUrl}/${file}`);
        if (!response.ok) {
          throw new Error(`GET ${file}: HTTP ${response.status}`);
        }
        return response.json();
      }),
    );
    return new BundleSource(
      catalog as CatalogFile,
      names as Record<string, NameRecord>,
      stats as StatsPayload,
    );
  }

  private entriesFor(target: Target): EntryJson[] {
    return target === "techniques" ? this.catalog.techniques : this.catalog.authenticators;
  }

  private withNames(entry: EntryJson): EntryJson {
    const record = this.names[entry.id];
    if (!record) {
      return entry;
    }
    return {
      ...entry,
      classification_name: record.classification_name,
      readable_name: record.readable_name,
      slug: record.slug,
    };
  }

  async listEntries(state: FilterState): Promise<ListPayload> {
    const items = filterEntries(this.entriesFor(state.target), state.selected).map(
      (entry) => this.withNames(entry),
    );
    return { total: items.length, items };
  }

  async getEntry(target: Target, id: string): Promise<EntryJson | null> {
    const entry = this.entriesFor(target).find((e) => e.id === id);
    if (!entry) {
      return null;
    }
    const detailed = this.withNames(entry);
    if (target === "techniques" && detailed.employments) {
      detailed.employments = detailed.employments.map((employment) => {
        const auth = this.catalog.authenticators.find(
          (a) => a.id === employment.authenticator_id,
        );
        return auth ? { ...employment, authenticator: this.withNames(auth) } : employment;
      });
    }
    if (target === "authenticators") {
      detailed.employed_by = this.catalog.techniques
        .filter((t) => t.employments?.some((e) => e.authenticator_id === id))
        .sort((a, b) => (a.id < b.id ? -1 : 1))
        .map((t) => ({
          id: t.id,
          name: t.name,
          position: t.employments!.find((e) => e.authenticator_id === id)!.position,
        }));
    }
    return detailed;
  }

  async getSchemes(): Promise<SchemesPayload> {
    return this.catalog.schemes;
  }

  async getStats(): Promise<StatsPayload> {
    return this.stats;
  }
}

/** Probe the API bases in order, then the bundle; null means offline. */
export async function detectSource(
  apiBases: string[],
  bundleBase: string,
): Promise<DataSource | null> {
  for (const base of apiBases) {
    try {
      const response = await fetch(`${base}/stats`);
      if (response.ok) {
        return new ApiSource(base);
      }
    } catch {
      // unreachable; try the next candidate
    }
  }
  try {
    return await BundleSource.load(bundleBase);
  } catch {
    return null;
  }
}
