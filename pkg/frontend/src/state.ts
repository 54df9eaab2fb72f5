/** Filter state and its lossless URL (query string) serialization.
 *
 * The canonical form keeps facet names sorted and each facet's selected
 * value-path prefixes sorted and de-duplicated, so serialize-then-parse is
 * the identity on every reachable state.
 */

import type { Target } from "./types.js";

export interface FilterState {
  target: Target;
  /** facet name -> sorted unique dotted value-path prefixes */
  selected: Record<string, string[]>;
}

const ENTRY_PATTERN = /^[a-z0-9-]+:[a-z0-9-]+(\.[a-z0-9-]+)*$/;

export function emptyState(target: Target = "techniques"): FilterState {
  return { target, selected: {} };
}

export function normalize(state: FilterState): FilterState {
  const selected: Record<string, string[]> = {};
  for (const facet of Object.keys(state.selected).sort()) {
    const paths = Array.from(new Set(state.selected[facet])).sort();
    if (paths.length > 0) {
      selected[facet] = paths;
    }
  }
  return { target: state.target, selected };
}

export function isSelected(state: FilterState, facet: string, path: string): boolean {
  return (state.selected[facet] ?? []).includes(path);
}

export function toggleSelection(
  state: FilterState,
  facet: string,
  path: string,
): FilterState {
  const current = state.selected[facet] ?? [];
  const next = current.includes(path)
    ? current.filter((p) => p !== path)
    : [...current, path];
  return normalize({
    target: state.target,
    selected: { ...state.selected, [facet]: next },
  });
}

export function clearFilters(state: FilterState): FilterState {
  return emptyState(state.target);
}

export function hasFilters(state: FilterState): boolean {
  return Object.keys(state.selected).length > 0;
}

/** Query-string form: one `f=facet:path` parameter per selection. */
export function serializeFilters(state: FilterState): string {
  const params = new URLSearchParams();
  const canonical = normalize(state);
  for (const facet of Object.keys(canonical.selected)) {
    for (const path of canonical.selected[facet]) {
      params.append("f", `${facet}:${path}`);
    }
  }
  return params.toString();
}

/** Inverse of serializeFilters; entries that do not look like a
 * facet:path selection are dropped rather than breaking the page. */
export function parseFilters(search: string, target: Target): FilterState {
  const params = new URLSearchParams(search);
  const selected: Record<string, string[]> = {};
  for (const raw of params.getAll("f")) {
    if (!ENTRY_PATTERN.test(raw)) {
      continue;
    }
    const colon = raw.indexOf(":");
    const facet = raw.slice(0, colon);
    const path = raw.slice(colon + 1);
    (selected[facet] ??= []).push(path);
  }
  return normalize({ target, selected });
}

export function statesEqual(a: FilterState, b: FilterState): boolean {
  return (
    a.target === b.target &&
    JSON.stringify(normalize(a).selected) === JSON.stringify(normalize(b).selected)
  );
}
