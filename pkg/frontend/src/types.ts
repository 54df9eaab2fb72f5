/** JSON shapes shared by the HTTP API and the static export bundle. */

export type Target = "techniques" | "authenticators";

export interface ValueNode {
  token: string;
  children?: ValueNode[];
}

export interface FacetJson {
  name: string;
  label: string;
  dimensionality: "one-dimensional" | "multi-dimensional";
  fundamental: boolean;
  optional: boolean;
  aliases?: string[];
  values: ValueNode[];
}

export interface SchemeJson {
  name: string;
  facets: FacetJson[];
}

export interface SchemesPayload {
  authenticator: SchemeJson;
  technique: SchemeJson;
}

export interface ReferenceJson {
  title: string;
  venue: string;
  year: number;
  doi?: string;
  url?: string;
}

export interface ReviewJson {
  checklist: string;
  verdict: string;
  notes: string;
  date: string;
}

export interface EmploymentJson {
  authenticator_id: string;
  position: number;
  interaction_used?: string[];
  /** Embedded by the technique detail endpoint. */
  authenticator?: EntryJson;
}

export interface BackLink {
  id: string;
  name: string;
  position: number;
}

/** Canonical entry record; the API (and merged bundle data) adds the
 * computed naming fields, detail endpoints add embeddings/back-links. */
export interface EntryJson {
  id: string;
  name: string;
  description: string;
  classification_status: "partial" | "complete";
  reference: ReferenceJson;
  assignment: Record<string, string[][]>;
  reasons?: Record<string, string>;
  employments?: EmploymentJson[];
  reviews: ReviewJson[];
  classification_name?: string;
  readable_name?: string;
  slug?: string;
  employed_by?: BackLink[];
}

export interface ListPayload {
  total: number;
  items: EntryJson[];
}

export interface NameRecord {
  kind: "technique" | "authenticator";
  name: string;
  classification_name: string;
  readable_name: string;
  slug: string;
}

export interface StatsPayload {
  totals: { authenticators: number; techniques: number };
  [key: string]: unknown;
}

export interface CatalogFile {
  format_version: string;
  schemes: SchemesPayload;
  authenticators: EntryJson[];
  techniques: EntryJson[];
}
