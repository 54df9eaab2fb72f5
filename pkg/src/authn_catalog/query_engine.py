"""Faceted filtering and aggregation over a catalog document.

Predicates match hierarchically: a predicate path selects every entry
whose assigned path has it as a prefix, so querying a factor also matches
all of its subfactors. Predicates combine with AND (`&`), OR (`,`), NOT
(`!`), and parentheses; the textual form is shared by the CLI and the
HTTP API, e.g. `factor=multi-factor & subject-interaction=passive`.

On multi-dimensional facets the default `any` mode matches when at least
one assigned path lies under the predicate path; `all` mode
(`facet=all:path`) requires every assigned path to. An absent optional
facet matches nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Union

from . import authn_schemas
from .facet_model import (
    Facet,
    PathResolutionError,
    Scheme,
    TOKEN_PATTERN,
    resolve_path,
)

if TYPE_CHECKING:
    from .catalog_store import CatalogDocument

TARGET_TECHNIQUES = "techniques"
TARGET_AUTHENTICATORS = "authenticators"
TARGETS = (TARGET_TECHNIQUES, TARGET_AUTHENTICATORS)

MODE_ANY = "any"
MODE_ALL = "all"

UNASSIGNED_KEY = "(unassigned)"


class QueryError(ValueError):
    """A query failed to parse or to resolve against the scheme.

    `position` is the 0-based offset into the query text, or -1 when the
    error is not tied to a location.
    """

    def __init__(self, message: str, position: int = -1):
        super().__init__(message)
        self.position = position


class QuerySyntaxError(QueryError):
    pass


class UnknownFacetError(QueryError):
    pass


class UnknownQueryPathError(QueryError):
    pass


@dataclass(frozen=True)
class FacetPredicate:
    """Match entries whose `facet` assigns a path under `path`."""

    facet: str
    path: tuple[str, ...]
    mode: str = MODE_ANY
    pos: int = field(default=-1, compare=False)
    path_pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Not:
    child: "Node"


@dataclass(frozen=True)
class And:
    children: tuple["Node", ...]


@dataclass(frozen=True)
class Or:
    children: tuple["Node", ...]


Node = Union[FacetPredicate, Not, And, Or]


@dataclass(frozen=True)
class Query:
    """A predicate expression aimed at one entry list. root=None matches all."""

    target: str
    root: Node | None = None

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"unknown query target {self.target!r}")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_word(self) -> tuple[str, int]:
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "-"
        ):
            self.pos += 1
        word = self.text[start : self.pos]
        if not word or not TOKEN_PATTERN.match(word):
            raise QuerySyntaxError(f"expected a name at position {start}", start)
        return word, start


def parse_query(text: str) -> Node:
    """Parse the textual query syntax into an expression tree.

    Grammar: or := and (`,` and)*; and := unary (`&` unary)*;
    unary := `!` unary | `(` or `)` | predicate;
    predicate := facet `=` [mode `:`] token (`.` token)*.
    """
    scanner = _Scanner(text)
    root = _parse_or(scanner)
    scanner.skip_ws()
    if scanner.pos != len(text):
        raise QuerySyntaxError(
            f"unexpected {scanner.peek()!r} at position {scanner.pos}", scanner.pos
        )
    return root


def _parse_or(scanner: _Scanner) -> Node:
    children = [_parse_and(scanner)]
    while True:
        scanner.skip_ws()
        if scanner.peek() == ",":
            scanner.pos += 1
            children.append(_parse_and(scanner))
        else:
            break
    return children[0] if len(children) == 1 else Or(tuple(children))


def _parse_and(scanner: _Scanner) -> Node:
    children = [_parse_unary(scanner)]
    while True:
        scanner.skip_ws()
        if scanner.peek() == "&":
            scanner.pos += 1
            children.append(_parse_unary(scanner))
        else:
            break
    return children[0] if len(children) == 1 else And(tuple(children))


def _parse_unary(scanner: _Scanner) -> Node:
    scanner.skip_ws()
    if scanner.peek() == "!":
        scanner.pos += 1
        return Not(_parse_unary(scanner))
    if scanner.peek() == "(":
        open_pos = scanner.pos
        scanner.pos += 1
        inner = _parse_or(scanner)
        scanner.skip_ws()
        if scanner.peek() != ")":
            raise QuerySyntaxError(
                f"unclosed '(' from position {open_pos}", scanner.pos
            )
        scanner.pos += 1
        return inner
    if not scanner.peek():
        raise QuerySyntaxError(
            f"expected a predicate at position {scanner.pos}", scanner.pos
        )
    return _parse_predicate(scanner)


def _parse_predicate(scanner: _Scanner) -> FacetPredicate:
    facet, facet_pos = scanner.take_word()
    scanner.skip_ws()
    if scanner.peek() != "=":
        raise QuerySyntaxError(
            f"expected '=' after {facet!r} at position {scanner.pos}", scanner.pos
        )
    scanner.pos += 1
    scanner.skip_ws()
    mode = MODE_ANY
    word, word_pos = scanner.take_word()
    if scanner.peek() == ":":
        if word not in (MODE_ANY, MODE_ALL):
            raise QuerySyntaxError(
                f"unknown match mode {word!r} at position {word_pos}", word_pos
            )
        mode = word
        scanner.pos += 1
        word, word_pos = scanner.take_word()
    path_pos = word_pos
    steps = [word]
    while scanner.peek() == ".":
        scanner.pos += 1
        step, _ = scanner.take_word()
        steps.append(step)
    return FacetPredicate(
        facet, tuple(steps), mode=mode, pos=facet_pos, path_pos=path_pos
    )


def _resolve_predicate(predicate: FacetPredicate, scheme: Scheme) -> Facet:
    facet = scheme.facet(predicate.facet)
    if facet is None:
        raise UnknownFacetError(
            f"unknown facet {predicate.facet!r} for {scheme.name} entries",
            predicate.pos,
        )
    try:
        resolve_path(facet, predicate.path)
    except PathResolutionError as exc:
        raise UnknownQueryPathError(str(exc), predicate.path_pos) from exc
    return facet


def matches(entry, predicate: FacetPredicate, scheme: Scheme) -> bool:
    """Whether one entry satisfies a predicate. An absent facet never matches."""
    facet = _resolve_predicate(predicate, scheme)
    paths = entry.assignment.paths(facet.name)
    if not paths:
        return False
    prefix = predicate.path
    hits = [path[: len(prefix)] == prefix for path in paths]
    return all(hits) if predicate.mode == MODE_ALL else any(hits)


def evaluate(document: "CatalogDocument", query: Query) -> list:
    """Entries satisfying the query expression, sorted by id."""
    entries, scheme = _target(document, query.target)
    if query.root is None:
        return sorted(entries, key=lambda e: e.id)
    by_id = {entry.id: entry for entry in entries}
    everything = frozenset(by_id)

    def eval_node(node: Node) -> frozenset[str]:
        if isinstance(node, FacetPredicate):
            return frozenset(
                eid for eid, entry in by_id.items() if matches(entry, node, scheme)
            )
        if isinstance(node, Not):
            return everything - eval_node(node.child)
        if isinstance(node, And):
            result = everything
            for child in node.children:
                result = result & eval_node(child)
            return result
        if isinstance(node, Or):
            result: frozenset[str] = frozenset()
            for child in node.children:
                result = result | eval_node(child)
            return result
        raise TypeError(f"unexpected query node {node!r}")

    selected = eval_node(query.root)
    return [by_id[eid] for eid in sorted(selected)]


def run_query(document: "CatalogDocument", target: str, text: str) -> list:
    """Parse and evaluate a textual query in one step."""
    text = text.strip()
    root = parse_query(text) if text else None
    return evaluate(document, Query(target, root))


def group_count(
    document: "CatalogDocument", target: str, facet_name: str, depth: int
) -> dict[str, int]:
    """Count entries by their assigned path truncated to `depth`.

    An entry with several paths under a multi-dimensional facet counts once
    per distinct truncated prefix; entries lacking the facet are counted
    under `(unassigned)`.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    entries, scheme = _target(document, target)
    facet = scheme.facet(facet_name)
    if facet is None:
        raise UnknownFacetError(f"unknown facet {facet_name!r} for {target}")
    counts: dict[str, int] = {}
    for entry in entries:
        paths = entry.assignment.paths(facet.name)
        if not paths:
            keys = {UNASSIGNED_KEY}
        else:
            keys = {".".join(path[:depth]) for path in paths}
        for key in keys:
            counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))


def catalog_groups(document: "CatalogDocument") -> dict[str, int]:
    """Group techniques the way the catalog lists them: multi-employment
    techniques by their full employment path, single-employment techniques
    by `single|<factor>` refined to the employed authenticator's subfactor."""
    counts: dict[str, int] = {}
    for technique in document.techniques:
        employment = technique.assignment.single_path(authn_schemas.EMPLOYMENT)
        if employment is None:
            key = UNASSIGNED_KEY
        elif employment[0] == "multi":
            key = ".".join(employment)
        else:
            key = "single"
            factor = technique.assignment.single_path(authn_schemas.FACTOR)
            if factor is not None:
                detail = factor
                if len(technique.employments) == 1:
                    auth = document.authenticator(
                        technique.employments[0].authenticator_id
                    )
                    if auth is not None:
                        auth_factor = auth.assignment.single_path(
                            authn_schemas.AUTH_FACTOR
                        )
                        if auth_factor is not None and auth_factor[0] == factor[0]:
                            detail = auth_factor[:2]
                key = "single|" + ".".join(detail)
        counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))


def _target(document: "CatalogDocument", target: str):
    if target == TARGET_TECHNIQUES:
        return document.techniques, document.technique_scheme
    if target == TARGET_AUTHENTICATORS:
        return document.authenticators, document.authenticator_scheme
    raise ValueError(f"unknown query target {target!r}")
