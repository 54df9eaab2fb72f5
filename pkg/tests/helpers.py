"""Shared test fixtures: entry factories, random catalogs, random queries,
and an independent brute-force query evaluator used as the oracle."""

from __future__ import annotations

import random

from authn_catalog.authn_schemas import (
    AuthenticatorEntry,
    Employment,
    Reference,
    TechniqueEntry,
)
from authn_catalog.catalog_store import CatalogDocument, new_document
from authn_catalog.facet_model import Facet, FacetAssignment, Scheme
from authn_catalog.query_engine import And, FacetPredicate, Not, Or, Query

REF = Reference("Test entry", "unit tests", 2026)

FACTOR_LEAVES = [
    "inherence-based.behavioral",
    "inherence-based.physiological",
    "knowledge-based.free-recall",
    "knowledge-based.associative",
    "possession-based.digital",
    "possession-based.physical",
]

EMPLOYMENT_PATHS = [
    "single",
    "multi.parallel",
    "multi.sequential.ordered",
    "multi.sequential.unordered",
]


def make_authenticator(
    entry_id: str,
    factor: str = "knowledge-based.free-recall",
    interaction=None,
    subject=None,
    output=None,
    status: str = "partial",
) -> AuthenticatorEntry:
    assignment = {"authentication-factor": factor}
    if interaction is not None:
        assignment["interaction"] = list(interaction)
    if subject is not None:
        assignment["subject"] = list(subject)
    if output is not None:
        assignment["output"] = output
    return AuthenticatorEntry(
        id=entry_id,
        name=entry_id,
        description="test authenticator",
        reference=REF,
        assignment=FacetAssignment.of(assignment),
        classification_status=status,
    )


def make_technique(
    entry_id: str,
    employment: str,
    factor: str,
    employments,
    status: str = "partial",
    **facets,
) -> TechniqueEntry:
    assignment = {"authenticator-employment": employment, "factor": factor}
    for facet, value in facets.items():
        assignment[facet.replace("_", "-")] = value
    built = []
    for i, emp in enumerate(employments):
        if isinstance(emp, Employment):
            built.append(emp)
        else:
            built.append(Employment(emp, i + 1))
    return TechniqueEntry(
        id=entry_id,
        name=entry_id,
        description="test technique",
        reference=REF,
        assignment=FacetAssignment.of(assignment),
        employments=tuple(built),
        classification_status=status,
    )


def toy_pin() -> AuthenticatorEntry:
    return make_authenticator(
        "pin",
        factor="knowledge-based.free-recall",
        interaction=["active"],
        subject=["human"],
        output="static",
        status="complete",
    )


def toy_touch() -> AuthenticatorEntry:
    return make_authenticator(
        "touch",
        factor="inherence-based.behavioral",
        interaction=["active", "passive"],
        subject=["human"],
        output="dynamic",
        status="complete",
    )


def toy_context_aware_touch() -> TechniqueEntry:
    return make_technique(
        "context-aware-touch",
        employment="multi.sequential.ordered",
        factor="multi-factor",
        employments=[
            Employment("pin", 1, ("active",)),
            Employment("touch", 2, ("passive",)),
        ],
        status="complete",
        contextuality=["state-based"],
        session_trust_contribution=["establish"],
        subject=["human"],
        subject_interaction=["active", "passive"],
        directionality="unidirectional",
        locality="local",
        privacy_preservation="onymous",
        revocability="non-revocable",
        uniqueness="unique",
    )


def resolver(*authenticators):
    by_id = {a.id: a for a in authenticators}
    return by_id.get


# ---------------------------------------------------------------------------
# Random catalogs and queries (seeded, for oracle-equivalence tests)


def random_document(rng: random.Random, max_entries: int = 50) -> CatalogDocument:
    n_auth = rng.randint(1, max(1, max_entries // 2))
    n_tech = rng.randint(0, max_entries - n_auth)
    authenticators = []
    for i in range(n_auth):
        kwargs = {}
        if rng.random() < 0.7:
            kwargs["interaction"] = rng.sample(["active", "passive"], rng.randint(1, 2))
        if rng.random() < 0.7:
            kwargs["subject"] = rng.sample(["human", "machine"], rng.randint(1, 2))
        if rng.random() < 0.7:
            kwargs["output"] = rng.choice(["static", "dynamic"])
        factor = rng.choice(FACTOR_LEAVES + ["inherence-based", "possession-based"])
        authenticators.append(
            make_authenticator(
                f"auth-{i:02d}",
                factor=factor,
                status=rng.choice(["partial", "complete"]),
                **kwargs,
            )
        )
    techniques = []
    for i in range(n_tech):
        employment = rng.choice(EMPLOYMENT_PATHS + ["multi"])
        count = 1 if employment == "single" else rng.randint(2, min(4, n_auth) if n_auth > 1 else 2)
        chosen = [rng.choice(authenticators).id for _ in range(count)]
        extras = {}
        if rng.random() < 0.5:
            extras["contextuality"] = rng.sample(
                ["spatial", "temporal", "state-based"], rng.randint(1, 3)
            )
        if rng.random() < 0.6:
            extras["subject_interaction"] = rng.sample(
                ["active", "passive"], rng.randint(1, 2)
            )
        if rng.random() < 0.6:
            extras["subject"] = rng.sample(["human", "machine"], rng.randint(1, 2))
        if rng.random() < 0.4:
            extras["locality"] = rng.choice(["local", "remote"])
        if rng.random() < 0.4:
            extras["revocability"] = rng.choice(["revocable", "non-revocable"])
        techniques.append(
            make_technique(
                f"tech-{i:02d}",
                employment=employment,
                factor=rng.choice(
                    ["knowledge-based", "possession-based", "inherence-based", "multi-factor"]
                ),
                employments=chosen,
                **extras,
            )
        )
    return new_document(authenticators, techniques)


def _random_path(rng: random.Random, facet: Facet) -> tuple[str, ...]:
    node = rng.choice(facet.roots)
    path = [node.token]
    while node.children and rng.random() < 0.6:
        node = rng.choice(node.children)
        path.append(node.token)
    return tuple(path)


def random_query_node(rng: random.Random, scheme: Scheme, depth: int = 0):
    roll = rng.random()
    if depth >= 2 or roll < 0.55:
        facet = rng.choice(scheme.facets)
        mode = "any"
        if facet.dimensionality == "multi-dimensional" and rng.random() < 0.3:
            mode = "all"
        return FacetPredicate(facet.name, _random_path(rng, facet), mode=mode)
    if roll < 0.7:
        return Not(random_query_node(rng, scheme, depth + 1))
    children = tuple(
        random_query_node(rng, scheme, depth + 1) for _ in range(rng.randint(2, 3))
    )
    return And(children) if roll < 0.85 else Or(children)


def query_to_text(node) -> str:
    if isinstance(node, FacetPredicate):
        prefix = "all:" if node.mode == "all" else ""
        return f"{node.facet}={prefix}{'.'.join(node.path)}"
    if isinstance(node, Not):
        return f"!({query_to_text(node.child)})"
    if isinstance(node, And):
        return "(" + " & ".join(query_to_text(c) for c in node.children) + ")"
    if isinstance(node, Or):
        return "(" + " , ".join(query_to_text(c) for c in node.children) + ")"
    raise TypeError(node)


# ---------------------------------------------------------------------------
# Independent oracle: per-entry recursive boolean evaluation, written
# without reusing the engine's matcher.


def _oracle_matches(entry, predicate: FacetPredicate, scheme: Scheme) -> bool:
    facet = scheme.facet(predicate.facet)
    assert facet is not None
    paths = entry.assignment.paths(facet.name)
    if not paths:
        return False
    wanted = list(predicate.path)
    flags = []
    for path in paths:
        flags.append(len(path) >= len(wanted) and list(path[: len(wanted)]) == wanted)
    return all(flags) if predicate.mode == "all" else any(flags)


def brute_force_ids(document: CatalogDocument, query: Query) -> set[str]:
    if query.target == "techniques":
        entries, scheme = document.techniques, document.technique_scheme
    else:
        entries, scheme = document.authenticators, document.authenticator_scheme

    def accepts(entry, node) -> bool:
        if isinstance(node, FacetPredicate):
            return _oracle_matches(entry, node, scheme)
        if isinstance(node, Not):
            return not accepts(entry, node.child)
        if isinstance(node, And):
            return all(accepts(entry, child) for child in node.children)
        if isinstance(node, Or):
            return any(accepts(entry, child) for child in node.children)
        raise TypeError(node)

    if query.root is None:
        return {entry.id for entry in entries}
    return {entry.id for entry in entries if accepts(entry, query.root)}
