/** Translate a FilterState into the engine's textual query syntax.
 *
 * Selections within one facet are alternatives (OR); facets combine
 * conjunctively (AND). The server stays the only filter evaluator.
 */

import { normalize, type FilterState } from "./state.js";

export function filterQuery(state: FilterState): string {
  const canonical = normalize(state);
  const groups: string[] = [];
  for (const facet of Object.keys(canonical.selected)) {
    const terms = canonical.selected[facet].map((path) => `${facet}=${path}`);
    groups.push(terms.length === 1 ? terms[0] : `(${terms.join(" , ")})`);
  }
  return groups.join(" & ");
}
