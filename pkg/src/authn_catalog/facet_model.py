"""Generic faceted-classification metamodel.

A scheme is an ordered set of facets; each facet carries a tree of
categorical values on a nominal scale. Classified objects hold a
FacetAssignment that picks value paths per facet. This module knows
nothing about authentication; domain schemes and cross-facet rules are
layered on top in authn_schemas.

All types are immutable after construction and every operation is a pure
function, so concurrent use needs no coordination.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

# Tokens must not contain the naming delimiters (`.`, `|`) or whitespace,
# otherwise generated classification names could not be parsed back.
TOKEN_PATTERN = re.compile(r"^[a-z0-9-]+$")

ONE_DIMENSIONAL = "one-dimensional"
MULTI_DIMENSIONAL = "multi-dimensional"
DIMENSIONALITIES = (ONE_DIMENSIONAL, MULTI_DIMENSIONAL)

# Rule identifiers used in validation reports.
RULE_MISSING_FACET = "MissingFacet"
RULE_UNKNOWN_FACET = "UnknownFacet"
RULE_CARDINALITY = "CardinalityViolation"
RULE_UNKNOWN_PATH = "UnknownPath"
RULE_PREFIX_OVERLAP = "PrefixOverlap"


class FacetModelError(ValueError):
    """A scheme, facet, value tree, or path is structurally invalid."""


class PathResolutionError(FacetModelError):
    """A value path does not exist in a facet's value tree."""

    def __init__(self, facet: str, token: str, message: str):
        super().__init__(message)
        self.facet = facet
        self.token = token


class UnknownRootError(PathResolutionError):
    def __init__(self, facet: str, token: str):
        super().__init__(facet, token, f"facet {facet!r} has no root value {token!r}")


class UnknownChildError(PathResolutionError):
    def __init__(self, facet: str, parent: str, token: str):
        super().__init__(
            facet, token, f"value {parent!r} of facet {facet!r} has no child {token!r}"
        )
        self.parent = parent


def _check_token(token: str, context: str) -> None:
    if not isinstance(token, str) or not TOKEN_PATTERN.match(token):
        raise FacetModelError(
            f"{context}: {token!r} is not a valid token (expected [a-z0-9-]+)"
        )


@dataclass(frozen=True)
class FacetValueNode:
    """One value in a facet's hierarchy; children refine the value."""

    token: str
    children: tuple["FacetValueNode", ...] = ()

    def __post_init__(self):
        _check_token(self.token, "facet value")
        object.__setattr__(self, "children", tuple(self.children))
        seen = set()
        for child in self.children:
            if child.token in seen:
                raise FacetModelError(
                    f"value {self.token!r} has duplicate child token {child.token!r}"
                )
            seen.add(child.token)

    def child(self, token: str) -> "FacetValueNode | None":
        for node in self.children:
            if node.token == token:
                return node
        return None

    @property
    def is_leaf(self) -> bool:
        return not self.children


def node(token: str, *children: FacetValueNode) -> FacetValueNode:
    """Terse constructor for value trees."""
    return FacetValueNode(token, children)


@dataclass(frozen=True)
class Facet:
    """A categorical property with a tree of alternative values.

    One-dimensional facets admit exactly one assigned path; multi-dimensional
    facets admit one or more. A fundamental facet is a main classifying
    property; classified items are named after fundamental facets, which is
    why fundamental facets must be one-dimensional and required.
    """

    name: str
    dimensionality: str
    fundamental: bool = False
    optional: bool = False
    roots: tuple[FacetValueNode, ...] = ()
    label: str = ""
    aliases: tuple[str, ...] = ()

    def __post_init__(self):
        _check_token(self.name, "facet name")
        if self.dimensionality not in DIMENSIONALITIES:
            raise FacetModelError(
                f"facet {self.name!r}: dimensionality must be one of {DIMENSIONALITIES}"
            )
        object.__setattr__(self, "roots", tuple(self.roots))
        object.__setattr__(self, "aliases", tuple(self.aliases))
        if not self.roots:
            raise FacetModelError(f"facet {self.name!r} must define at least one value")
        seen = set()
        for root in self.roots:
            if root.token in seen:
                raise FacetModelError(
                    f"facet {self.name!r} has duplicate root token {root.token!r}"
                )
            seen.add(root.token)
        for alias in self.aliases:
            _check_token(alias, f"facet {self.name!r} alias")
        if self.fundamental and self.dimensionality != ONE_DIMENSIONAL:
            raise FacetModelError(
                f"facet {self.name!r}: fundamental facets must be one-dimensional"
            )
        if self.fundamental and self.optional:
            raise FacetModelError(
                f"facet {self.name!r}: fundamental facets cannot be optional"
            )
        if not self.label:
            object.__setattr__(self, "label", self.name)

    def root(self, token: str) -> FacetValueNode | None:
        for root in self.roots:
            if root.token == token:
                return root
        return None


@dataclass(frozen=True)
class Scheme:
    """An ordered collection of facets classifying one kind of object."""

    name: str
    facets: tuple[Facet, ...]

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(self.facets))
        names: set[str] = set()
        for facet in self.facets:
            for key in (facet.name, *facet.aliases):
                if key in names:
                    raise FacetModelError(
                        f"scheme {self.name!r}: duplicate facet name or alias {key!r}"
                    )
                names.add(key)
        if not any(f.fundamental for f in self.facets):
            raise FacetModelError(
                f"scheme {self.name!r} must have at least one fundamental facet"
            )

    def facet(self, name: str) -> Facet | None:
        """Look up a facet by canonical name or alias."""
        for facet in self.facets:
            if facet.name == name or name in facet.aliases:
                return facet
        return None

    @property
    def fundamental_facets(self) -> tuple[Facet, ...]:
        return tuple(f for f in self.facets if f.fundamental)


@dataclass(frozen=True)
class ValuePath:
    """A chain of tokens from a facet root toward a descendant."""

    facet: str
    steps: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise FacetModelError("value path must have at least one step")


Path = tuple[str, ...]


def _as_path(value) -> Path:
    if isinstance(value, str):
        steps = tuple(value.split("."))
    else:
        steps = tuple(value)
    if not steps or any(not s for s in steps):
        raise FacetModelError(f"invalid value path {value!r}")
    return steps


@dataclass(frozen=True)
class FacetAssignment:
    """The value paths an entry picked, keyed by canonical facet name.

    Paths are stored sorted and de-duplicated so equality and serialization
    do not depend on construction order.
    """

    entries: Mapping[str, tuple[Path, ...]] = field(default_factory=dict)

    def __post_init__(self):
        normalized: dict[str, tuple[Path, ...]] = {}
        for facet in sorted(self.entries):
            paths = sorted({_as_path(p) for p in self.entries[facet]})
            normalized[facet] = tuple(paths)
        object.__setattr__(self, "entries", normalized)

    @classmethod
    def of(cls, mapping: Mapping[str, Iterable]) -> "FacetAssignment":
        """Build from {facet: [path, ...]} where a path is a dotted string
        or an iterable of tokens; a bare string is accepted for a single path."""
        entries = {}
        for facet, paths in mapping.items():
            if isinstance(paths, str):
                paths = [paths]
            entries[facet] = [_as_path(p) for p in paths]
        return cls(entries)

    def facets(self) -> tuple[str, ...]:
        return tuple(self.entries)

    def has(self, facet: str) -> bool:
        return facet in self.entries

    def paths(self, facet: str) -> tuple[Path, ...]:
        return self.entries.get(facet, ())

    def single_path(self, facet: str) -> Path | None:
        """The facet's assigned path, when exactly one is assigned."""
        paths = self.paths(facet)
        return paths[0] if len(paths) == 1 else None

    def tokens(self, facet: str) -> frozenset[str] | None:
        """Leaf tokens of a flat facet's assignment; None when absent."""
        if facet not in self.entries:
            return None
        return frozenset(path[-1] for path in self.entries[facet])


@dataclass(frozen=True)
class Violation:
    """One rule violation in a validation report. Violations are report
    items, not exceptions; an empty report means the check passed."""

    rule: str
    message: str
    facet: str | None = None
    entry_id: str | None = None

    def sort_key(self):
        return (self.entry_id or "", self.rule, self.message)


def resolve_path(facet: Facet, steps: Iterable[str]) -> FacetValueNode:
    """Walk `steps` from a matching root; raise if any token is unknown."""
    steps = tuple(steps)
    if not steps:
        raise FacetModelError("cannot resolve an empty path")
    current = facet.root(steps[0])
    if current is None:
        raise UnknownRootError(facet.name, steps[0])
    for token in steps[1:]:
        child = current.child(token)
        if child is None:
            raise UnknownChildError(facet.name, current.token, token)
        current = child
    return current


def validate_assignment(scheme: Scheme, assignment: FacetAssignment) -> list[Violation]:
    """Check an assignment against a scheme.

    Reports MissingFacet, UnknownFacet, CardinalityViolation, UnknownPath,
    and PrefixOverlap. The report is deterministic and independent of the
    assignment's construction order.
    """
    report: list[Violation] = []
    known = set()
    for facet in scheme.facets:
        known.add(facet.name)
        if not assignment.has(facet.name):
            if not facet.optional:
                report.append(
                    Violation(
                        RULE_MISSING_FACET,
                        f"required facet {facet.name!r} is not assigned",
                        facet=facet.name,
                    )
                )
            continue
        paths = assignment.paths(facet.name)
        if not paths:
            report.append(
                Violation(
                    RULE_CARDINALITY,
                    f"facet {facet.name!r} is present but assigns no value",
                    facet=facet.name,
                )
            )
            continue
        if facet.dimensionality == ONE_DIMENSIONAL and len(paths) > 1:
            listed = ", ".join(".".join(p) for p in paths)
            report.append(
                Violation(
                    RULE_CARDINALITY,
                    f"one-dimensional facet {facet.name!r} assigns {len(paths)} values ({listed})",
                    facet=facet.name,
                )
            )
        for path in paths:
            try:
                resolve_path(facet, path)
            except PathResolutionError as exc:
                report.append(
                    Violation(
                        RULE_UNKNOWN_PATH,
                        f"path {'.'.join(path)}: {exc}",
                        facet=facet.name,
                    )
                )
        for path in paths:
            for other in paths:
                if path != other and other[: len(path)] == path:
                    report.append(
                        Violation(
                            RULE_PREFIX_OVERLAP,
                            f"facet {facet.name!r}: {'.'.join(path)} is a prefix of "
                            f"{'.'.join(other)}; assign only the deepest value",
                            facet=facet.name,
                        )
                    )
    for name in assignment.facets():
        if name not in known:
            report.append(
                Violation(
                    RULE_UNKNOWN_FACET,
                    f"facet {name!r} is not part of scheme {scheme.name!r}",
                    facet=name,
                )
            )
    return report
