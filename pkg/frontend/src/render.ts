/** HTML renderers. Pure string builders, so they are testable without a
 * DOM; main.ts assigns the results to innerHTML and wires events via
 * delegation on data-* attributes. */

import { isSelected, type FilterState } from "./state.js";
import { detailHash, listHash } from "./router.js";
import type {
  EntryJson,
  FacetJson,
  SchemeJson,
  Target,
  ValueNode,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function countForPrefix(items: EntryJson[], facet: string, prefix: string[]): number {
  let count = 0;
  for (const item of items) {
    const paths = item.assignment[facet];
    if (!paths) {
      continue;
    }
    const hit = paths.some(
      (path) =>
        path.length >= prefix.length && prefix.every((token, i) => path[i] === token),
    );
    if (hit) {
      count += 1;
    }
  }
  return count;
}

function renderValueTree(
  facet: FacetJson,
  nodes: ValueNode[],
  prefix: string[],
  items: EntryJson[],
  state: FilterState,
): string {
  const rows = nodes.map((node) => {
    const path = [...prefix, node.token];
    const dotted = path.join(".");
    const count = countForPrefix(items, facet.name, path);
    const checked = isSelected(state, facet.name, dotted) ? " checked" : "";
    const children = node.children?.length
      ? renderValueTree(facet, node.children, path, items, state)
      : "";
    return `<li>
      <label class="facet-value">
        <input type="checkbox" data-facet="${facet.name}" data-path="${dotted}"${checked}>
        <span class="token">${escapeHtml(node.token)}</span>
        <span class="count">${count}</span>
      </label>${children}
    </li>`;
  });
  return `<ul class="value-tree">${rows.join("")}</ul>`;
}

export function renderSidebar(
  scheme: SchemeJson,
  items: EntryJson[],
  state: FilterState,
): string {
  const groups = scheme.facets.map((facet) => {
    const marker = facet.fundamental
      ? '<span class="facet-tag">fundamental</span>'
      : facet.dimensionality === "multi-dimensional"
        ? '<span class="facet-tag">multi</span>'
        : "";
    return `<details class="facet-group" open>
      <summary>${escapeHtml(facet.label)} ${marker}</summary>
      ${renderValueTree(facet, facet.values, [], items, state)}
    </details>`;
  });
  const clear = Object.keys(state.selected).length
    ? '<button type="button" data-action="clear-filters">Clear filters</button>'
    : "";
  return `<div class="sidebar-header"><h2>Filter</h2>${clear}</div>${groups.join("")}`;
}

export function renderTabs(target: Target): string {
  const tab = (t: Target, label: string) =>
    `<a href="${listHash(t)}" class="tab${t === target ? " active" : ""}">${label}</a>`;
  return `${tab("techniques", "Techniques")}${tab("authenticators", "Authenticators")}`;
}

export function renderResults(state: FilterState, items: EntryJson[]): string {
  const label = state.target === "techniques" ? "technique" : "authenticator";
  const rows = items.map((item) => {
    const href = detailHash(state.target, item.slug ?? item.id);
    return `<li class="result">
      <a href="${href}">${escapeHtml(item.name)}</a>
      <code>${escapeHtml(item.classification_name ?? "")}</code>
      <p>${escapeHtml(item.description)}</p>
    </li>`;
  });
  return `<h2>${items.length} ${label}${items.length === 1 ? "" : "s"}</h2>
    <ul class="results">${rows.join("")}</ul>`;
}

function renderFacetRows(entry: EntryJson, scheme: SchemeJson): string {
  const rows: string[] = [];
  for (const facet of scheme.facets) {
    const paths = entry.assignment[facet.name];
    if (!paths || paths.length === 0) {
      continue;
    }
    const values = paths.map((p) => `<code>${escapeHtml(p.join("."))}</code>`).join(", ");
    const reason = entry.reasons?.[facet.name];
    rows.push(`<tr>
      <th>${escapeHtml(facet.label)}</th>
      <td>${values}${reason ? `<p class="reason">${escapeHtml(reason)}</p>` : ""}</td>
    </tr>`);
  }
  return rows.join("");
}

export function renderEntryDetail(
  entry: EntryJson,
  target: Target,
  scheme: SchemeJson,
): string {
  const sections: string[] = [];
  sections.push(`<nav><a href="${listHash(target)}">&larr; back to ${target}</a></nav>`);
  sections.push(`<h2>${escapeHtml(entry.name)}</h2>`);
  if (entry.classification_name) {
    sections.push(`<p class="names">
      <code>${escapeHtml(entry.classification_name)}</code>
      <span class="readable">${escapeHtml(entry.readable_name ?? "")}</span>
      <span class="status">${escapeHtml(entry.classification_status)}</span>
    </p>`);
  }
  sections.push(`<p>${escapeHtml(entry.description)}</p>`);
  sections.push(`<table class="facets">${renderFacetRows(entry, scheme)}</table>`);

  if (entry.employments?.length) {
    const rows = entry.employments
      .slice()
      .sort((a, b) => a.position - b.position)
      .map((employment) => {
        const auth = employment.authenticator;
        const link = auth
          ? `<a href="${detailHash("authenticators", auth.slug ?? auth.id)}">${escapeHtml(auth.name)}</a>`
          : escapeHtml(employment.authenticator_id);
        const used = employment.interaction_used?.length
          ? ` <span class="used">(used: ${employment.interaction_used.join(", ")})</span>`
          : "";
        return `<li value="${employment.position}">${link}${used}</li>`;
      });
    sections.push(`<h3>Employs</h3><ol class="employments">${rows.join("")}</ol>`);
  }

  if (entry.employed_by?.length) {
    const rows = entry.employed_by.map(
      (link) =>
        `<li><a href="${detailHash("techniques", link.id)}">${escapeHtml(link.name)}</a>
         <span class="used">(position ${link.position})</span></li>`,
    );
    sections.push(`<h3>Employed by</h3><ul class="employments">${rows.join("")}</ul>`);
  }

  const ref = entry.reference;
  sections.push(`<h3>Reference</h3>
    <p class="reference">${escapeHtml(ref.title)}. ${escapeHtml(ref.venue)}, ${ref.year}.
    ${ref.doi ? `DOI: ${escapeHtml(ref.doi)}` : ""}
    ${ref.url ? `<a href="${escapeHtml(ref.url)}">link</a>` : ""}</p>`);

  if (entry.reviews.length) {
    const rows = entry.reviews.map(
      (review) =>
        `<li>${escapeHtml(review.checklist)}: ${escapeHtml(review.verdict)}
         (${escapeHtml(review.date)})${review.notes ? ` - ${escapeHtml(review.notes)}` : ""}</li>`,
    );
    sections.push(`<h3>Reviews</h3><ul class="reviews">${rows.join("")}</ul>`);
  }
  return sections.join("\n");
}

export function renderNotFound(target: Target, id: string): string {
  return `<nav><a href="${listHash(target)}">&larr; back to ${target}</a></nav>
    <h2>Not found</h2>
    <p>No ${target.slice(0, -1)} with id <code>${escapeHtml(id)}</code>.</p>`;
}

export function renderOfflineBanner(): string {
  return `<div class="banner error">
    Catalog data is unreachable: neither the HTTP API nor the static export
    bundle (<code>./data/</code>) responded. Start the API with
    <code>catalog serve</code> or export a bundle with
    <code>catalog export --out-dir frontend/data</code>.
  </div>`;
}

export function renderBundleBanner(): string {
  return `<div class="banner info">
    Browsing the static export bundle; filtering runs in the page. Start
    <code>catalog serve</code> for the live API.
  </div>`;
}
