/** Application wiring: URL <-> state, data fetching with
 * cancel-on-supersede, and event delegation. */

import { detectSource, type DataSource } from "./api.js";
import {
  clearFilters,
  emptyState,
  parseFilters,
  serializeFilters,
  toggleSelection,
} from "./state.js";
import { parseRoute, type Route } from "./router.js";
import {
  renderBundleBanner,
  renderEntryDetail,
  renderNotFound,
  renderOfflineBanner,
  renderResults,
  renderSidebar,
  renderTabs,
} from "./render.js";
import type { SchemesPayload } from "./types.js";

declare global {
  interface Window {
    CATALOG_API_BASES?: string[];
  }
}

const DEFAULT_API_BASES = ["/api", "http://127.0.0.1:8080/api"];

const app = {
  source: null as DataSource | null,
  schemes: null as SchemesPayload | null,
  state: emptyState(),
  fetchSeq: 0,
};

function element(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing #${id}`);
  }
  return found;
}

function currentRoute(): Route {
  return parseRoute(window.location.pathname, window.location.hash);
}

function pushFiltersToUrl(): void {
  const query = serializeFilters(app.state);
  const url =
    window.location.pathname + (query ? `?${query}` : "") + window.location.hash;
  window.history.replaceState(null, "", url);
}

async function showList(): Promise<void> {
  const source = app.source;
  const schemes = app.schemes;
  if (!source || !schemes) {
    return;
  }
  const sequence = ++app.fetchSeq;
  const state = app.state;
  const scheme =
    state.target === "techniques" ? schemes.technique : schemes.authenticator;
  const payload = await source.listEntries(state);
  if (sequence !== app.fetchSeq) {
    return; // superseded by a newer filter change
  }
  element("sidebar").innerHTML = renderSidebar(scheme, payload.items, state);
  element("content").innerHTML = renderResults(state, payload.items);
}

async function showDetail(route: Route & { kind: "detail" }): Promise<void> {
  const source = app.source;
  const schemes = app.schemes;
  if (!source || !schemes) {
    return;
  }
  const sequence = ++app.fetchSeq;
  const entry = await source.getEntry(route.target, route.id);
  if (sequence !== app.fetchSeq) {
    return;
  }
  element("sidebar").innerHTML = "";
  const scheme =
    route.target === "techniques" ? schemes.technique : schemes.authenticator;
  element("content").innerHTML = entry
    ? renderEntryDetail(entry, route.target, scheme)
    : renderNotFound(route.target, route.id);
}

async function handleLocation(): Promise<void> {
  const route = currentRoute();
  element("tabs").innerHTML = renderTabs(route.target);
  if (route.kind === "detail") {
    await showDetail(route);
    return;
  }
  if (route.target !== app.state.target) {
    app.state = parseFilters(window.location.search, route.target);
  }
  await showList();
}

function onSidebarChange(event: Event): void {
  const input = event.target as HTMLInputElement;
  const facet = input.dataset.facet;
  const path = input.dataset.path;
  if (!facet || !path) {
    return;
  }
  app.state = toggleSelection(app.state, facet, path);
  pushFiltersToUrl();
  void showList();
}

function onSidebarClick(event: Event): void {
  const target = event.target as HTMLElement;
  if (target.dataset.action === "clear-filters") {
    app.state = clearFilters(app.state);
    pushFiltersToUrl();
    void showList();
  }
}

async function boot(): Promise<void> {
  const bases = window.CATALOG_API_BASES ?? DEFAULT_API_BASES;
  app.source = await detectSource(bases, "./data");
  if (!app.source) {
    element("banner").innerHTML = renderOfflineBanner();
    return;
  }
  if (app.source.kind === "bundle") {
    element("banner").innerHTML = renderBundleBanner();
  }
  app.schemes = await app.source.getSchemes();
  app.state = parseFilters(window.location.search, currentRoute().target);

  element("sidebar").addEventListener("change", onSidebarChange);
  element("sidebar").addEventListener("click", onSidebarClick);
  window.addEventListener("hashchange", () => void handleLocation());
  window.addEventListener("popstate", () => void handleLocation());

  await handleLocation();
}

void boot();
