"""The two built-in classification schemes, catalog entry types, and the
cross-facet consistency rules that tie a technique to the authenticators
it employs.

The authenticator scheme has one fundamental facet (the authentication
factor, a two-level hierarchy of factors and subfactors), two
multi-dimensional facets (interaction, subject), and one further
one-dimensional facet (output). The technique scheme has two fundamental
facets (authenticator employment, factor), four multi-dimensional facets,
and five further one-dimensional facets.

Consistency rules (reported with rule ids C1..C6):

  C1  employment cardinality: `single` needs exactly one employment,
      `multi` at least two
  C2  factor aggregation: the assigned factor equals the factor derived
      from the employed authenticators' factor roots
  C3  knowledge implies active: a knowledge-based authenticator's
      interaction is exactly {active}
  C4  subject-interaction union: the technique's subject-interaction set
      equals the union of the as-used (or inherent) interaction modes
  C5  subject compatibility: the technique's subject set is contained in
      every employed authenticator's subject set
  C6  sequencing applicability: a `sequential` employment needs at least
      two employments with distinct positions

A rule that would have to read a facet that is not assigned (routine for
entries with classification_status "partial") is skipped; missing facets
are policed separately by the lint level in catalog_store.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .facet_model import (
    Facet,
    FacetAssignment,
    MULTI_DIMENSIONAL,
    ONE_DIMENSIONAL,
    Scheme,
    Violation,
    node,
)

AUTHENTICATOR_SCHEME_NAME = "authenticator"
TECHNIQUE_SCHEME_NAME = "technique"

# Canonical facet names (authenticator scheme).
AUTH_FACTOR = "authentication-factor"
INTERACTION = "interaction"
SUBJECT = "subject"
OUTPUT = "output"

# Canonical facet names (technique scheme).
EMPLOYMENT = "authenticator-employment"
FACTOR = "factor"
CONTEXTUALITY = "contextuality"
SESSION_TRUST = "session-trust-contribution"
SUBJECT_INTERACTION = "subject-interaction"
DIRECTIONALITY = "directionality"
LOCALITY = "locality"
PRIVACY = "privacy-preservation"
REVOCABILITY = "revocability"
UNIQUENESS = "uniqueness"

MULTI_FACTOR = "multi-factor"
ACTIVE = "active"

STATUS_PARTIAL = "partial"
STATUS_COMPLETE = "complete"
CLASSIFICATION_STATUSES = (STATUS_PARTIAL, STATUS_COMPLETE)

CHECKLISTS = ("ontological", "uniqueness")
VERDICTS = ("accepted", "rejected", "modified")

# Rules checkable without the full facet set; the rest need strict lint.
LENIENT_CONSISTENCY_RULES = frozenset({"C1", "C2", "C6"})
STRICT_CONSISTENCY_RULES = frozenset({"C1", "C2", "C3", "C4", "C5", "C6"})


def authenticator_scheme() -> Scheme:
    """The classification scheme for authenticators (4 facets)."""
    return Scheme(
        AUTHENTICATOR_SCHEME_NAME,
        (
            Facet(
                AUTH_FACTOR,
                ONE_DIMENSIONAL,
                fundamental=True,
                label="Authentication Factor",
                aliases=("factor",),
                roots=(
                    node("inherence-based", node("behavioral"), node("physiological")),
                    node("knowledge-based", node("free-recall"), node("associative")),
                    node("possession-based", node("digital"), node("physical")),
                ),
            ),
            Facet(
                INTERACTION,
                MULTI_DIMENSIONAL,
                label="Interaction",
                roots=(node("active"), node("passive")),
            ),
            Facet(
                SUBJECT,
                MULTI_DIMENSIONAL,
                label="Subject",
                roots=(node("human"), node("machine")),
            ),
            Facet(
                OUTPUT,
                ONE_DIMENSIONAL,
                label="Output",
                roots=(node("static"), node("dynamic")),
            ),
        ),
    )


def technique_scheme() -> Scheme:
    """The classification scheme for authentication techniques (11 facets)."""
    return Scheme(
        TECHNIQUE_SCHEME_NAME,
        (
            Facet(
                EMPLOYMENT,
                ONE_DIMENSIONAL,
                fundamental=True,
                label="Authenticator Employment",
                aliases=("employment",),
                roots=(
                    node("single"),
                    node(
                        "multi",
                        node("parallel"),
                        node("sequential", node("ordered"), node("unordered")),
                    ),
                ),
            ),
            Facet(
                FACTOR,
                ONE_DIMENSIONAL,
                fundamental=True,
                label="Factor",
                roots=(
                    node("knowledge-based"),
                    node("possession-based"),
                    node("inherence-based"),
                    node(MULTI_FACTOR),
                ),
            ),
            Facet(
                CONTEXTUALITY,
                MULTI_DIMENSIONAL,
                optional=True,
                label="Contextuality",
                roots=(node("spatial"), node("temporal"), node("state-based")),
            ),
            Facet(
                SESSION_TRUST,
                MULTI_DIMENSIONAL,
                label="Session Trust Contribution",
                roots=(node("establish"), node("maintain")),
            ),
            Facet(
                SUBJECT,
                MULTI_DIMENSIONAL,
                label="Subject",
                roots=(node("human"), node("machine")),
            ),
            Facet(
                SUBJECT_INTERACTION,
                MULTI_DIMENSIONAL,
                label="Subject Interaction",
                roots=(node("active"), node("passive")),
            ),
            Facet(
                DIRECTIONALITY,
                ONE_DIMENSIONAL,
                label="Directionality",
                roots=(node("unidirectional"), node("bidirectional")),
            ),
            Facet(
                LOCALITY,
                ONE_DIMENSIONAL,
                label="Locality",
                roots=(node("local"), node("remote")),
            ),
            Facet(
                PRIVACY,
                ONE_DIMENSIONAL,
                label="Privacy Preservation",
                roots=(node("onymous"), node("pseudonymous"), node("anonymous")),
            ),
            Facet(
                REVOCABILITY,
                ONE_DIMENSIONAL,
                label="Revocability",
                roots=(node("revocable"), node("non-revocable")),
            ),
            Facet(
                UNIQUENESS,
                ONE_DIMENSIONAL,
                label="Uniqueness",
                roots=(node("unique"), node("non-unique")),
            ),
        ),
    )


@dataclass(frozen=True)
class Reference:
    """Free-text citation record for a catalog entry."""

    title: str
    venue: str
    year: int
    doi: str | None = None
    url: str | None = None


@dataclass(frozen=True)
class ReviewRecord:
    """Outcome of applying a review checklist to an entry."""

    checklist: str
    verdict: str
    notes: str = ""
    date: datetime.date = datetime.date(1970, 1, 1)

    def __post_init__(self):
        if self.checklist not in CHECKLISTS:
            raise ValueError(f"unknown checklist {self.checklist!r}")
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")


@dataclass(frozen=True)
class Employment:
    """The aggregation link from a technique to one employed authenticator.

    interaction_used records the interaction modes the technique actually
    uses; when absent, the authenticator's full interaction set applies.
    """

    authenticator_id: str
    position: int
    interaction_used: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.position < 1:
            raise ValueError("employment position must be >= 1")
        if self.interaction_used is not None:
            modes = tuple(self.interaction_used)
            if not modes:
                raise ValueError("interaction_used must be non-empty when present")
            object.__setattr__(self, "interaction_used", modes)


@dataclass(frozen=True)
class AuthenticatorEntry:
    """A classified authenticator."""

    id: str
    name: str
    description: str
    reference: Reference
    assignment: FacetAssignment
    classification_status: str = STATUS_PARTIAL
    reasons: Mapping[str, str] = field(default_factory=dict)
    reviews: tuple[ReviewRecord, ...] = ()

    def __post_init__(self):
        _check_entry_common(self)


@dataclass(frozen=True)
class TechniqueEntry:
    """A classified technique aggregating one or more authenticator employments."""

    id: str
    name: str
    description: str
    reference: Reference
    assignment: FacetAssignment
    employments: tuple[Employment, ...] = ()
    classification_status: str = STATUS_PARTIAL
    reasons: Mapping[str, str] = field(default_factory=dict)
    reviews: tuple[ReviewRecord, ...] = ()

    def __post_init__(self):
        _check_entry_common(self)
        object.__setattr__(self, "employments", tuple(self.employments))
        if not self.employments:
            raise ValueError(f"technique {self.id!r} must employ at least one authenticator")


def _check_entry_common(entry) -> None:
    if not entry.id:
        raise ValueError("entry id must be non-empty")
    if entry.classification_status not in CLASSIFICATION_STATUSES:
        raise ValueError(
            f"entry {entry.id!r}: unknown classification status "
            f"{entry.classification_status!r}"
        )
    object.__setattr__(entry, "reasons", dict(entry.reasons))
    object.__setattr__(entry, "reviews", tuple(entry.reviews))


class UnresolvedAuthenticatorError(LookupError):
    """An employment references an authenticator id that does not resolve."""

    def __init__(self, authenticator_id: str):
        super().__init__(f"employment references unknown authenticator {authenticator_id!r}")
        self.authenticator_id = authenticator_id


Resolver = Callable[[str], "AuthenticatorEntry | None"]


def _resolve_all(
    employments: Sequence[Employment], resolve: Resolver
) -> list[AuthenticatorEntry]:
    resolved = []
    for employment in employments:
        auth = resolve(employment.authenticator_id)
        if auth is None:
            raise UnresolvedAuthenticatorError(employment.authenticator_id)
        resolved.append(auth)
    return resolved


def _factor_root(auth: AuthenticatorEntry) -> str | None:
    path = auth.assignment.single_path(AUTH_FACTOR)
    return path[0] if path else None


def derive_factor(
    employments: Sequence[Employment], resolve: Resolver
) -> tuple[str, ...]:
    """The technique factor implied by the employed authenticators: their
    shared factor root, or the combined value when the roots differ."""
    if not employments:
        raise ValueError("cannot derive a factor from zero employments")
    roots = set()
    for auth in _resolve_all(employments, resolve):
        root = _factor_root(auth)
        if root is None:
            raise ValueError(
                f"authenticator {auth.id!r} has no usable factor assignment"
            )
        roots.add(root)
    if len(roots) >= 2:
        return (MULTI_FACTOR,)
    return (roots.pop(),)


def check_consistency(
    technique: TechniqueEntry, resolve: Resolver
) -> list[Violation]:
    """Evaluate the cross-facet rules C1..C6 for one technique.

    Raises UnresolvedAuthenticatorError on a dangling employment reference;
    everything else is reported as violations.
    """
    report: list[Violation] = []
    employments = technique.employments
    authenticators = _resolve_all(employments, resolve)
    by_employment = list(zip(employments, authenticators))
    entry_id = technique.id

    employment_path = technique.assignment.single_path(EMPLOYMENT)
    if employment_path is not None:
        count = len(employments)
        if employment_path[0] == "single" and count != 1:
            report.append(
                Violation(
                    "C1",
                    f"employment 'single' requires exactly 1 employment, found {count}",
                    facet=EMPLOYMENT,
                    entry_id=entry_id,
                )
            )
        if employment_path[0] == "multi" and count < 2:
            report.append(
                Violation(
                    "C1",
                    f"employment 'multi' requires at least 2 employments, found {count}",
                    facet=EMPLOYMENT,
                    entry_id=entry_id,
                )
            )
        if "sequential" in employment_path:
            positions = [e.position for e in employments]
            if len(employments) < 2 or len(set(positions)) != len(positions):
                report.append(
                    Violation(
                        "C6",
                        "sequential employment requires at least 2 employments "
                        "with distinct positions",
                        facet=EMPLOYMENT,
                        entry_id=entry_id,
                    )
                )

    assigned_factor = technique.assignment.single_path(FACTOR)
    if assigned_factor is not None and all(_factor_root(a) for a in authenticators):
        derived = derive_factor(employments, resolve)
        if assigned_factor != derived:
            report.append(
                Violation(
                    "C2",
                    f"assigned factor {'.'.join(assigned_factor)} does not match "
                    f"factor {'.'.join(derived)} derived from the employed authenticators",
                    facet=FACTOR,
                    entry_id=entry_id,
                )
            )

    for auth in sorted({a.id: a for a in authenticators}.values(), key=lambda a: a.id):
        if _factor_root(auth) != "knowledge-based":
            continue
        interaction = auth.assignment.tokens(INTERACTION)
        if interaction is not None and interaction != {ACTIVE}:
            report.append(
                Violation(
                    "C3",
                    f"knowledge-based authenticator {auth.id!r} must support exactly "
                    f"{{active}} interaction, found {{{', '.join(sorted(interaction))}}}",
                    facet=INTERACTION,
                    entry_id=entry_id,
                )
            )

    assigned_interaction = technique.assignment.tokens(SUBJECT_INTERACTION)
    if assigned_interaction is not None:
        union: set[str] = set()
        computable = True
        for employment, auth in by_employment:
            if employment.interaction_used is not None:
                union.update(employment.interaction_used)
                continue
            inherent = auth.assignment.tokens(INTERACTION)
            if inherent is None:
                computable = False
                break
            union.update(inherent)
        if computable and union != set(assigned_interaction):
            report.append(
                Violation(
                    "C4",
                    f"subject interaction {{{', '.join(sorted(assigned_interaction))}}} "
                    f"differs from the union of employed interaction modes "
                    f"{{{', '.join(sorted(union))}}}",
                    facet=SUBJECT_INTERACTION,
                    entry_id=entry_id,
                )
            )

    assigned_subject = technique.assignment.tokens(SUBJECT)
    if assigned_subject is not None:
        subject_sets = [a.assignment.tokens(SUBJECT) for a in authenticators]
        if all(s is not None for s in subject_sets):
            supported = set.intersection(*(set(s) for s in subject_sets))
            extra = set(assigned_subject) - supported
            if extra:
                report.append(
                    Violation(
                        "C5",
                        f"subject(s) {{{', '.join(sorted(extra))}}} not supported by "
                        "every employed authenticator",
                        facet=SUBJECT,
                        entry_id=entry_id,
                    )
                )

    return report


def validate_employments(
    technique: TechniqueEntry, resolve: Resolver
) -> list[Violation]:
    """Structural employment checks: positions 1..n without gaps, and
    interaction_used a subset of the authenticator's interaction set."""
    report: list[Violation] = []
    positions = sorted(e.position for e in technique.employments)
    if positions != list(range(1, len(positions) + 1)):
        report.append(
            Violation(
                "EmploymentPositions",
                f"employment positions {positions} must be 1..{len(positions)} without gaps",
                entry_id=technique.id,
            )
        )
    for employment in technique.employments:
        if employment.interaction_used is None:
            continue
        auth = resolve(employment.authenticator_id)
        if auth is None:
            continue  # dangling references are reported separately
        inherent = auth.assignment.tokens(INTERACTION)
        if inherent is None:
            continue
        unsupported = set(employment.interaction_used) - set(inherent)
        if unsupported:
            report.append(
                Violation(
                    "EmploymentInteraction",
                    f"interaction_used {{{', '.join(sorted(unsupported))}}} not within "
                    f"authenticator {employment.authenticator_id!r} interaction set",
                    entry_id=technique.id,
                )
            )
    return report
