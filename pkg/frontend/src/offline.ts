/** Offline fallback filtering over the static export bundle.
 *
 * Mirrors the server's semantics for the filter sidebar: a selected path
 * prefix matches an entry when some assigned path of that facet starts
 * with it; selections within a facet are alternatives, facets combine
 * conjunctively. Only used when the HTTP API is unreachable.
 */

import type { EntryJson } from "./types.js";

function pathMatches(assigned: string[], prefix: string[]): boolean {
  return (
    assigned.length >= prefix.length &&
    prefix.every((token, i) => assigned[i] === token)
  );
}

export function entryMatches(
  entry: Pick<EntryJson, "assignment">,
  selected: Record<string, string[]>,
): boolean {
  for (const facet of Object.keys(selected)) {
    const assigned = entry.assignment[facet];
    if (!assigned || assigned.length === 0) {
      return false;
    }
    const anySelected = selected[facet].some((dotted) => {
      const prefix = dotted.split(".");
      return assigned.some((path) => pathMatches(path, prefix));
    });
    if (!anySelected) {
      return false;
    }
  }
  return true;
}

export function filterEntries<E extends Pick<EntryJson, "assignment" | "id">>(
  entries: E[],
  selected: Record<string, string[]>,
): E[] {
  return entries
    .filter((entry) => entryMatches(entry, selected))
    .sort((a, b) => (a.id < b.id ? -1 : a.id > b.id ? 1 : 0));
}
