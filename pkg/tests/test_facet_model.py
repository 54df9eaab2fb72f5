import pytest

from authn_catalog.authn_schemas import authenticator_scheme
from authn_catalog.facet_model import (
    Facet,
    FacetAssignment,
    FacetModelError,
    MULTI_DIMENSIONAL,
    ONE_DIMENSIONAL,
    Scheme,
    UnknownChildError,
    UnknownRootError,
    node,
    resolve_path,
    validate_assignment,
)


def factor_facet():
    return authenticator_scheme().facet("authentication-factor")


def all_chains(facet):
    """Independent oracle: every valid token chain by explicit DFS."""
    chains = []

    def walk(prefix, nodes):
        for n in nodes:
            chain = prefix + (n.token,)
            chains.append(chain)
            walk(chain, n.children)

    walk((), facet.roots)
    return chains


class TestConstruction:
    def test_token_charset_rejected(self):
        for bad in ("Upper", "with space", "dot.ted", "pipe|d", ""):
            with pytest.raises(FacetModelError):
                node(bad)

    def test_duplicate_sibling_tokens_rejected(self):
        with pytest.raises(FacetModelError):
            node("parent", node("a"), node("a"))

    def test_facet_needs_values(self):
        with pytest.raises(FacetModelError):
            Facet("empty", ONE_DIMENSIONAL)

    def test_duplicate_roots_rejected(self):
        with pytest.raises(FacetModelError):
            Facet("f", ONE_DIMENSIONAL, roots=(node("a"), node("a")))

    def test_bad_dimensionality_rejected(self):
        with pytest.raises(FacetModelError):
            Facet("f", "2d", roots=(node("a"),))

    def test_fundamental_must_be_one_dimensional_and_required(self):
        with pytest.raises(FacetModelError):
            Facet("f", MULTI_DIMENSIONAL, fundamental=True, roots=(node("a"),))
        with pytest.raises(FacetModelError):
            Facet("f", ONE_DIMENSIONAL, fundamental=True, optional=True, roots=(node("a"),))

    def test_scheme_needs_fundamental_facet(self):
        with pytest.raises(FacetModelError):
            Scheme("s", (Facet("f", ONE_DIMENSIONAL, roots=(node("a"),)),))

    def test_scheme_rejects_colliding_names_and_aliases(self):
        a = Facet("a", ONE_DIMENSIONAL, fundamental=True, roots=(node("x"),))
        b = Facet("b", ONE_DIMENSIONAL, roots=(node("x"),), aliases=("a",))
        with pytest.raises(FacetModelError):
            Scheme("s", (a, b))


class TestResolvePath:
    def test_subfactor_resolves(self):
        found = resolve_path(factor_facet(), ["inherence-based", "behavioral"])
        assert found.token == "behavioral"
        assert found.is_leaf

    def test_single_step_resolves_to_root(self):
        found = resolve_path(factor_facet(), ["inherence-based"])
        assert found.token == "inherence-based"
        assert not found.is_leaf

    def test_unknown_child_names_failing_token(self):
        with pytest.raises(UnknownChildError) as exc:
            resolve_path(factor_facet(), ["inherence-based", "digital"])
        assert exc.value.token == "digital"

    def test_unknown_root_names_failing_token(self):
        with pytest.raises(UnknownRootError) as exc:
            resolve_path(factor_facet(), ["biometric"])
        assert exc.value.token == "biometric"

    def test_resolves_exactly_the_dfs_chains(self):
        facet = factor_facet()
        chains = all_chains(facet)
        assert ("inherence-based", "digital") not in chains
        for chain in chains:
            assert resolve_path(facet, chain).token == chain[-1]
        # every one-step extension beyond a leaf, and every unknown root, fails
        for chain in chains:
            with pytest.raises(FacetModelError):
                resolve_path(facet, chain + ("nope",))
        with pytest.raises(FacetModelError):
            resolve_path(facet, ("nope",))


class TestValidateAssignment:
    def scheme(self):
        return Scheme(
            "toy",
            (
                Facet("kind", ONE_DIMENSIONAL, fundamental=True,
                      roots=(node("a", node("a1")), node("b"))),
                Facet("tags", MULTI_DIMENSIONAL,
                      roots=(node("x", node("x1")), node("y"))),
                Facet("opt", MULTI_DIMENSIONAL, optional=True,
                      roots=(node("z"),)),
            ),
        )

    def test_valid_assignment_passes(self):
        a = FacetAssignment.of({"kind": "a.a1", "tags": ["x", "y"]})
        assert validate_assignment(self.scheme(), a) == []

    def test_one_dimensional_rejects_two_values(self):
        a = FacetAssignment.of({"kind": ["a", "b"], "tags": ["x"]})
        report = validate_assignment(self.scheme(), a)
        assert [v.rule for v in report] == ["CardinalityViolation"]

    def test_optional_facet_may_be_absent(self):
        a = FacetAssignment.of({"kind": "b", "tags": ["y"]})
        assert validate_assignment(self.scheme(), a) == []

    def test_required_facet_must_be_present(self):
        a = FacetAssignment.of({"kind": "b"})
        report = validate_assignment(self.scheme(), a)
        assert [(v.rule, v.facet) for v in report] == [("MissingFacet", "tags")]

    def test_present_but_empty_is_a_cardinality_violation(self):
        a = FacetAssignment({"kind": (("b",),), "tags": ()})
        report = validate_assignment(self.scheme(), a)
        assert [v.rule for v in report] == ["CardinalityViolation"]

    def test_unknown_facet_reported(self):
        a = FacetAssignment.of({"kind": "b", "tags": ["x"], "mystery": ["z"]})
        rules = {(v.rule, v.facet) for v in validate_assignment(self.scheme(), a)}
        assert ("UnknownFacet", "mystery") in rules

    def test_alias_keys_are_not_canonical(self):
        scheme = authenticator_scheme()
        a = FacetAssignment.of({"factor": "knowledge-based"})
        rules = {v.rule for v in validate_assignment(scheme, a)}
        assert "UnknownFacet" in rules

    def test_unknown_path_reported(self):
        a = FacetAssignment.of({"kind": "b.bogus", "tags": ["x"]})
        report = validate_assignment(self.scheme(), a)
        assert [v.rule for v in report] == ["UnknownPath"]

    def test_prefix_overlap_reported(self):
        a = FacetAssignment.of({"kind": "b", "tags": [["x"], ["x", "x1"]]})
        report = validate_assignment(self.scheme(), a)
        assert [v.rule for v in report] == ["PrefixOverlap"]

    def test_report_independent_of_entry_order(self):
        one = FacetAssignment.of({"kind": ["a", "b"], "tags": ["x"], "mystery": ["z"]})
        two = FacetAssignment.of({"mystery": ["z"], "tags": ["x"], "kind": ["b", "a"]})
        assert validate_assignment(self.scheme(), one) == validate_assignment(
            self.scheme(), two
        )


class TestAssignmentNormalization:
    def test_paths_are_sorted_and_deduplicated(self):
        a = FacetAssignment.of({"tags": ["y", "x", "y"]})
        assert a.paths("tags") == (("x",), ("y",))

    def test_equality_ignores_construction_order(self):
        assert FacetAssignment.of({"a": "x", "b": "y"}) == FacetAssignment.of(
            {"b": "y", "a": "x"}
        )

    def test_tokens_of_absent_facet_is_none(self):
        a = FacetAssignment.of({"tags": ["x"]})
        assert a.tokens("other") is None
        assert a.tokens("tags") == {"x"}
