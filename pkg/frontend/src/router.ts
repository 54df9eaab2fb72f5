/** Route parsing for /techniques, /authenticators, /t/{slug}, /a/{slug}.
 *
 * Generated links use hash routes (#/t/...) so any static file server
 * works; real pathnames parse too for hosts with SPA fallback.
 */

import type { Target } from "./types.js";

export type Route =
  | { kind: "list"; target: Target }
  | { kind: "detail"; target: Target; id: string };

/** Entry ids never contain `--`, so the id is the part after the last
 * `--`; a bare id is accepted as its own slug. */
export function slugToId(slug: string): string {
  const cut = slug.lastIndexOf("--");
  return cut === -1 ? slug : slug.slice(cut + 2);
}

export function parseRoute(pathname: string, hash: string): Route {
  const source = hash.startsWith("#/") ? hash.slice(1) : pathname;
  const parts = source.split("/").filter((p) => p.length > 0);
  if (parts[0] === "authenticators") {
    return { kind: "list", target: "authenticators" };
  }
  if (parts[0] === "t" && parts.length === 2) {
    return { kind: "detail", target: "techniques", id: slugToId(decodeURIComponent(parts[1])) };
  }
  if (parts[0] === "a" && parts.length === 2) {
    return {
      kind: "detail",
      target: "authenticators",
      id: slugToId(decodeURIComponent(parts[1])),
    };
  }
  return { kind: "list", target: "techniques" };
}

export function listHash(target: Target): string {
  return `#/${target}`;
}

export function detailHash(target: Target, slugOrId: string): string {
  return `#/${target === "techniques" ? "t" : "a"}/${encodeURIComponent(slugOrId)}`;
}
