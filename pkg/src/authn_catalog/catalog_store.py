"""Persistent catalog format, loading, canonical serialization, and lint.

A catalog file is UTF-8 JSON holding one document: `format_version`, the
two embedded `schemes`, and the `authenticators` and `techniques` entry
lists. The canonical form uses 2-space indentation, keys in documented
order, and entry arrays sorted by id, so save-load-save is byte-identical.

Loading enforces hard invariants (well-formed JSON, unique ids, resolvable
employment references, structurally valid assignments) and returns every
remaining finding as warnings. Lint distinguishes two levels:

  lenient  structural validity plus the consistency rules C1, C2, C6 and
           the employment invariants
  strict   additionally C3..C5, leaf-level fundamental paths, and missing
           non-fundamental facets on entries marked `complete`

Entries marked `classification_status: partial` may omit non-fundamental
facets without strict findings; rules that would read an absent facet are
skipped for them.

Documents are immutable snapshots; derive changed documents by
constructing new ones (dataclasses.replace on entries works well).
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path as FsPath
from typing import Any, Iterable

from . import authn_schemas
from .authn_schemas import (
    AuthenticatorEntry,
    Employment,
    Reference,
    ReviewRecord,
    TechniqueEntry,
    check_consistency,
    validate_employments,
)
from .facet_model import (
    Facet,
    FacetAssignment,
    FacetModelError,
    FacetValueNode,
    RULE_MISSING_FACET,
    Scheme,
    Violation,
    resolve_path,
    validate_assignment,
)

FORMAT_VERSION = "1.0.0"

LENIENT = "lenient"
STRICT = "strict"
LINT_LEVELS = (LENIENT, STRICT)

RULE_LEAF_PATH = "LeafPath"
RULE_UNRESOLVED = "UnresolvedAuthenticator"

_SEED_RESOURCE = "data/seed_catalog.json"


class CatalogError(ValueError):
    """Base class for catalog loading failures."""


class ParseError(CatalogError):
    """The input is not a well-formed catalog document."""


class IntegrityError(CatalogError):
    """Duplicate entry ids or dangling employment references."""


class SchemaError(CatalogError):
    """An entry's assignment is structurally invalid against its scheme."""


@dataclass(frozen=True)
class CatalogDocument:
    """Immutable snapshot of a whole catalog."""

    format_version: str
    authenticator_scheme: Scheme
    technique_scheme: Scheme
    authenticators: tuple[AuthenticatorEntry, ...]
    techniques: tuple[TechniqueEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "authenticators", tuple(self.authenticators))
        object.__setattr__(self, "techniques", tuple(self.techniques))

    def authenticator(self, entry_id: str) -> AuthenticatorEntry | None:
        for entry in self.authenticators:
            if entry.id == entry_id:
                return entry
        return None

    def technique(self, entry_id: str) -> TechniqueEntry | None:
        for entry in self.techniques:
            if entry.id == entry_id:
                return entry
        return None

    def employing(self, authenticator_id: str) -> tuple[TechniqueEntry, ...]:
        """Techniques that employ the given authenticator, sorted by id."""
        hits = [
            t
            for t in self.techniques
            if any(e.authenticator_id == authenticator_id for e in t.employments)
        ]
        return tuple(sorted(hits, key=lambda t: t.id))


def new_document(
    authenticators: Iterable[AuthenticatorEntry] = (),
    techniques: Iterable[TechniqueEntry] = (),
) -> CatalogDocument:
    """A document over the built-in schemes."""
    return CatalogDocument(
        FORMAT_VERSION,
        authn_schemas.authenticator_scheme(),
        authn_schemas.technique_scheme(),
        tuple(authenticators),
        tuple(techniques),
    )


# ---------------------------------------------------------------------------
# Lint


def lint(document: CatalogDocument, level: str = STRICT) -> list[Violation]:
    """Aggregate per-entry violations, ordered by (entry id, rule, message)."""
    if level not in LINT_LEVELS:
        raise ValueError(f"unknown lint level {level!r}")
    strict = level == STRICT
    report: list[Violation] = []

    for entries, scheme in (
        (document.authenticators, document.authenticator_scheme),
        (document.techniques, document.technique_scheme),
    ):
        for entry in entries:
            report.extend(_assignment_findings(entry, scheme, strict))

    for technique in document.techniques:
        dangling = sorted(
            {
                e.authenticator_id
                for e in technique.employments
                if document.authenticator(e.authenticator_id) is None
            }
        )
        for missing in dangling:
            report.append(
                Violation(
                    RULE_UNRESOLVED,
                    f"employment references unknown authenticator {missing!r}",
                    entry_id=technique.id,
                )
            )
        report.extend(validate_employments(technique, document.authenticator))
        if not dangling:
            wanted = (
                authn_schemas.STRICT_CONSISTENCY_RULES
                if strict
                else authn_schemas.LENIENT_CONSISTENCY_RULES
            )
            report.extend(
                v
                for v in check_consistency(technique, document.authenticator)
                if v.rule in wanted
            )

    return sorted(report, key=Violation.sort_key)


def _assignment_findings(entry, scheme: Scheme, strict: bool) -> list[Violation]:
    findings = []
    for violation in validate_assignment(scheme, entry.assignment):
        if violation.rule == RULE_MISSING_FACET:
            facet = scheme.facet(violation.facet or "")
            fundamental = facet is not None and facet.fundamental
            if not fundamental and not (
                strict
                and entry.classification_status == authn_schemas.STATUS_COMPLETE
            ):
                continue
        findings.append(replace(violation, entry_id=entry.id))
    if strict:
        for facet in scheme.fundamental_facets:
            for path in entry.assignment.paths(facet.name):
                try:
                    node = resolve_path(facet, path)
                except FacetModelError:
                    continue  # already reported as UnknownPath
                if not node.is_leaf:
                    findings.append(
                        Violation(
                            RULE_LEAF_PATH,
                            f"fundamental facet {facet.name!r} path "
                            f"{'.'.join(path)} stops at an inner value; "
                            "assign a leaf",
                            facet=facet.name,
                            entry_id=entry.id,
                        )
                    )
    return findings


# ---------------------------------------------------------------------------
# Canonical serialization


def save(document: CatalogDocument) -> bytes:
    """Serialize to the canonical byte form (stable key order, entries
    sorted by id, 2-space indentation, trailing newline)."""
    payload = {
        "format_version": document.format_version,
        "schemes": {
            "authenticator": scheme_json(document.authenticator_scheme),
            "technique": scheme_json(document.technique_scheme),
        },
        "authenticators": [
            entry_json(e, document.authenticator_scheme)
            for e in sorted(document.authenticators, key=lambda e: e.id)
        ],
        "techniques": [
            entry_json(e, document.technique_scheme)
            for e in sorted(document.techniques, key=lambda e: e.id)
        ],
    }
    return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def scheme_json(scheme: Scheme) -> dict:
    return {"name": scheme.name, "facets": [_facet_json(f) for f in scheme.facets]}


def _facet_json(facet: Facet) -> dict:
    out: dict[str, Any] = {
        "name": facet.name,
        "label": facet.label,
        "dimensionality": facet.dimensionality,
        "fundamental": facet.fundamental,
        "optional": facet.optional,
    }
    if facet.aliases:
        out["aliases"] = list(facet.aliases)
    out["values"] = [_node_json(n) for n in facet.roots]
    return out


def _node_json(node: FacetValueNode) -> dict:
    out: dict[str, Any] = {"token": node.token}
    if node.children:
        out["children"] = [_node_json(c) for c in node.children]
    return out


def _facet_order(scheme: Scheme) -> dict[str, int]:
    return {facet.name: i for i, facet in enumerate(scheme.facets)}


def entry_json(entry, scheme: Scheme) -> dict:
    order = _facet_order(scheme)
    sort_facets = lambda names: sorted(names, key=lambda n: (order.get(n, len(order)), n))
    out: dict[str, Any] = {
        "id": entry.id,
        "name": entry.name,
        "description": entry.description,
        "classification_status": entry.classification_status,
        "reference": _reference_json(entry.reference),
        "assignment": {
            facet: [list(path) for path in entry.assignment.paths(facet)]
            for facet in sort_facets(entry.assignment.facets())
        },
    }
    if entry.reasons:
        out["reasons"] = {f: entry.reasons[f] for f in sort_facets(entry.reasons)}
    if isinstance(entry, TechniqueEntry):
        out["employments"] = [
            _employment_json(e)
            for e in sorted(entry.employments, key=lambda e: e.position)
        ]
    out["reviews"] = [
        _review_json(r)
        for r in sorted(entry.reviews, key=lambda r: (r.date.isoformat(), r.checklist))
    ]
    return out


def _reference_json(reference: Reference) -> dict:
    out: dict[str, Any] = {
        "title": reference.title,
        "venue": reference.venue,
        "year": reference.year,
    }
    if reference.doi:
        out["doi"] = reference.doi
    if reference.url:
        out["url"] = reference.url
    return out


def _employment_json(employment: Employment) -> dict:
    out: dict[str, Any] = {
        "authenticator_id": employment.authenticator_id,
        "position": employment.position,
    }
    if employment.interaction_used is not None:
        out["interaction_used"] = sorted(employment.interaction_used)
    return out


def _review_json(review: ReviewRecord) -> dict:
    return {
        "checklist": review.checklist,
        "verdict": review.verdict,
        "notes": review.notes,
        "date": review.date.isoformat(),
    }


# ---------------------------------------------------------------------------
# Loading


def load(data: bytes | str) -> tuple[CatalogDocument, list[Violation]]:
    """Parse and validate a catalog document.

    Raises ParseError, IntegrityError, or SchemaError on hard invariant
    failures; every lint finding at strict level is returned as warnings
    next to the document.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc

    _need_keys(raw, "document", ("format_version", "schemes", "authenticators", "techniques"))
    version = _need(raw, "format_version", str, "document")
    if version.split(".")[0] != FORMAT_VERSION.split(".")[0]:
        raise ParseError(
            f"unsupported format_version {version!r} (supported: {FORMAT_VERSION.split('.')[0]}.x)"
        )
    schemes_raw = _need(raw, "schemes", dict, "document")
    _need_keys(schemes_raw, "schemes", ("authenticator", "technique"))
    auth_scheme = _parse_scheme(schemes_raw["authenticator"], "authenticator")
    tech_scheme = _parse_scheme(schemes_raw["technique"], "technique")

    authenticators = [
        _parse_entry(item, f"authenticators[{i}]", technique=False)
        for i, item in enumerate(_need(raw, "authenticators", list, "document"))
    ]
    techniques = [
        _parse_entry(item, f"techniques[{i}]", technique=True)
        for i, item in enumerate(_need(raw, "techniques", list, "document"))
    ]

    document = CatalogDocument(
        version, auth_scheme, tech_scheme, tuple(authenticators), tuple(techniques)
    )
    _check_integrity(document)
    _check_assignments(document)
    return document, lint(document, STRICT)


def load_path(path: str | FsPath) -> tuple[CatalogDocument, list[Violation]]:
    return load(FsPath(path).read_bytes())


def seed_path() -> FsPath:
    """Filesystem path of the bundled seed catalog."""
    return FsPath(str(resources.files("authn_catalog").joinpath(_SEED_RESOURCE)))


def load_seed() -> tuple[CatalogDocument, list[Violation]]:
    return load(resources.files("authn_catalog").joinpath(_SEED_RESOURCE).read_bytes())


def _check_integrity(document: CatalogDocument) -> None:
    for kind, entries in (
        ("authenticator", document.authenticators),
        ("technique", document.techniques),
    ):
        seen: set[str] = set()
        for entry in entries:
            if entry.id in seen:
                raise IntegrityError(f"duplicate {kind} id {entry.id!r}")
            seen.add(entry.id)
    known = {a.id for a in document.authenticators}
    for technique in document.techniques:
        for employment in technique.employments:
            if employment.authenticator_id not in known:
                raise IntegrityError(
                    f"technique {technique.id!r} employs unknown authenticator "
                    f"{employment.authenticator_id!r}"
                )


def _check_assignments(document: CatalogDocument) -> None:
    for entries, scheme in (
        (document.authenticators, document.authenticator_scheme),
        (document.techniques, document.technique_scheme),
    ):
        for entry in entries:
            for violation in validate_assignment(scheme, entry.assignment):
                if violation.rule == RULE_MISSING_FACET:
                    facet = scheme.facet(violation.facet or "")
                    if facet is None or not facet.fundamental:
                        continue  # a lint matter, not a load failure
                raise SchemaError(f"entry {entry.id!r}: {violation.message}")


# -- shape helpers ----------------------------------------------------------


def _need(obj: dict, key: str, kind: type, context: str):
    if key not in obj:
        raise ParseError(f"{context}: missing key {key!r}")
    value = obj[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ParseError(f"{context}: key {key!r} must be {kind.__name__}")
    return value


def _need_keys(obj, context: str, keys: tuple[str, ...], optional: tuple[str, ...] = ()):
    if not isinstance(obj, dict):
        raise ParseError(f"{context}: expected an object")
    unknown = set(obj) - set(keys) - set(optional)
    if unknown:
        raise ParseError(f"{context}: unexpected key(s) {sorted(unknown)}")
    for key in keys:
        if key not in obj:
            raise ParseError(f"{context}: missing key {key!r}")


def _parse_scheme(raw, expected_name: str) -> Scheme:
    context = f"schemes.{expected_name}"
    _need_keys(raw, context, ("name", "facets"))
    name = _need(raw, "name", str, context)
    if name != expected_name:
        raise ParseError(f"{context}: scheme name must be {expected_name!r}")
    facets = []
    for i, item in enumerate(_need(raw, "facets", list, context)):
        facets.append(_parse_facet(item, f"{context}.facets[{i}]"))
    try:
        return Scheme(name, tuple(facets))
    except FacetModelError as exc:
        raise ParseError(f"{context}: {exc}") from exc


def _parse_facet(raw, context: str) -> Facet:
    _need_keys(
        raw,
        context,
        ("name", "label", "dimensionality", "fundamental", "optional", "values"),
        optional=("aliases",),
    )
    values = _need(raw, "values", list, context)
    aliases = raw.get("aliases", [])
    if not isinstance(aliases, list) or not all(isinstance(a, str) for a in aliases):
        raise ParseError(f"{context}: 'aliases' must be a list of strings")
    try:
        return Facet(
            name=_need(raw, "name", str, context),
            dimensionality=_need(raw, "dimensionality", str, context),
            fundamental=_need(raw, "fundamental", bool, context),
            optional=_need(raw, "optional", bool, context),
            label=_need(raw, "label", str, context),
            aliases=tuple(aliases),
            roots=tuple(
                _parse_node(item, f"{context}.values[{i}]")
                for i, item in enumerate(values)
            ),
        )
    except FacetModelError as exc:
        raise ParseError(f"{context}: {exc}") from exc


def _parse_node(raw, context: str) -> FacetValueNode:
    _need_keys(raw, context, ("token",), optional=("children",))
    children = raw.get("children", [])
    if not isinstance(children, list):
        raise ParseError(f"{context}: 'children' must be a list")
    try:
        return FacetValueNode(
            _need(raw, "token", str, context),
            tuple(
                _parse_node(item, f"{context}.children[{i}]")
                for i, item in enumerate(children)
            ),
        )
    except FacetModelError as exc:
        raise ParseError(f"{context}: {exc}") from exc


def _parse_entry(raw, context: str, technique: bool):
    keys = ["id", "name", "description", "classification_status", "reference",
            "assignment", "reviews"]
    if technique:
        keys.insert(6, "employments")
    _need_keys(raw, context, tuple(keys), optional=("reasons",))

    reference = _parse_reference(raw["reference"], f"{context}.reference")
    assignment = _parse_assignment(raw["assignment"], f"{context}.assignment")
    reasons = raw.get("reasons", {})
    if not isinstance(reasons, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in reasons.items()
    ):
        raise ParseError(f"{context}: 'reasons' must map facet names to strings")
    reviews = tuple(
        _parse_review(item, f"{context}.reviews[{i}]")
        for i, item in enumerate(_need(raw, "reviews", list, context))
    )
    common = dict(
        id=_need(raw, "id", str, context),
        name=_need(raw, "name", str, context),
        description=_need(raw, "description", str, context),
        classification_status=_need(raw, "classification_status", str, context),
        reference=reference,
        assignment=assignment,
        reasons=reasons,
        reviews=reviews,
    )
    try:
        if technique:
            employments = tuple(
                _parse_employment(item, f"{context}.employments[{i}]")
                for i, item in enumerate(_need(raw, "employments", list, context))
            )
            return TechniqueEntry(employments=employments, **common)
        return AuthenticatorEntry(**common)
    except ValueError as exc:
        raise ParseError(f"{context}: {exc}") from exc


def _parse_reference(raw, context: str) -> Reference:
    _need_keys(raw, context, ("title", "venue", "year"), optional=("doi", "url"))
    doi = raw.get("doi")
    url = raw.get("url")
    if doi is not None and not isinstance(doi, str):
        raise ParseError(f"{context}: 'doi' must be a string")
    if url is not None and not isinstance(url, str):
        raise ParseError(f"{context}: 'url' must be a string")
    return Reference(
        title=_need(raw, "title", str, context),
        venue=_need(raw, "venue", str, context),
        year=_need(raw, "year", int, context),
        doi=doi,
        url=url,
    )


def _parse_assignment(raw, context: str) -> FacetAssignment:
    if not isinstance(raw, dict):
        raise ParseError(f"{context}: expected an object")
    entries = {}
    for facet, paths in raw.items():
        if not isinstance(paths, list):
            raise ParseError(f"{context}.{facet}: expected a list of paths")
        parsed = []
        for i, path in enumerate(paths):
            if not isinstance(path, list) or not all(isinstance(s, str) for s in path):
                raise ParseError(
                    f"{context}.{facet}[{i}]: a path must be a list of tokens"
                )
            parsed.append(tuple(path))
        entries[facet] = tuple(parsed)
    try:
        return FacetAssignment(entries)
    except FacetModelError as exc:
        raise ParseError(f"{context}: {exc}") from exc


def _parse_employment(raw, context: str) -> Employment:
    _need_keys(raw, context, ("authenticator_id", "position"), optional=("interaction_used",))
    used = raw.get("interaction_used")
    if used is not None and (
        not isinstance(used, list) or not all(isinstance(s, str) for s in used)
    ):
        raise ParseError(f"{context}: 'interaction_used' must be a list of strings")
    try:
        return Employment(
            authenticator_id=_need(raw, "authenticator_id", str, context),
            position=_need(raw, "position", int, context),
            interaction_used=tuple(used) if used is not None else None,
        )
    except ValueError as exc:
        raise ParseError(f"{context}: {exc}") from exc


def _parse_review(raw, context: str) -> ReviewRecord:
    _need_keys(raw, context, ("checklist", "verdict", "notes", "date"))
    date_raw = _need(raw, "date", str, context)
    try:
        date = datetime.date.fromisoformat(date_raw)
    except ValueError as exc:
        raise ParseError(f"{context}: invalid date {date_raw!r}") from exc
    try:
        return ReviewRecord(
            checklist=_need(raw, "checklist", str, context),
            verdict=_need(raw, "verdict", str, context),
            notes=_need(raw, "notes", str, context),
            date=date,
        )
    except ValueError as exc:
        raise ParseError(f"{context}: {exc}") from exc
