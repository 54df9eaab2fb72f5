import itertools

import pytest

from authn_catalog.authn_schemas import (
    Employment,
    ReviewRecord,
    UnresolvedAuthenticatorError,
    authenticator_scheme,
    check_consistency,
    derive_factor,
    technique_scheme,
    validate_employments,
)
from authn_catalog.facet_model import MULTI_DIMENSIONAL, ONE_DIMENSIONAL, resolve_path

from helpers import (
    make_authenticator,
    make_technique,
    resolver,
    toy_context_aware_touch,
    toy_pin,
    toy_touch,
)


class TestSchemeShape:
    def test_authenticator_scheme_facet_counts(self, auth_scheme):
        assert len(auth_scheme.facets) == 4
        fundamental = [f for f in auth_scheme.facets if f.fundamental]
        rest = [f for f in auth_scheme.facets if not f.fundamental]
        assert [f.name for f in fundamental] == ["authentication-factor"]
        dims = sorted(f.dimensionality for f in rest)
        assert dims == [MULTI_DIMENSIONAL, MULTI_DIMENSIONAL, ONE_DIMENSIONAL]

    def test_technique_scheme_facet_counts(self, tech_scheme):
        assert len(tech_scheme.facets) == 11
        fundamental = [f.name for f in tech_scheme.facets if f.fundamental]
        assert fundamental == ["authenticator-employment", "factor"]
        rest = [f for f in tech_scheme.facets if not f.fundamental]
        multi = [f for f in rest if f.dimensionality == MULTI_DIMENSIONAL]
        one = [f for f in rest if f.dimensionality == ONE_DIMENSIONAL]
        assert len(multi) == 4
        assert len(one) == 5

    def test_factor_hierarchy_paths_resolve(self, auth_scheme):
        facet = auth_scheme.facet("authentication-factor")
        for path in (
            ["knowledge-based", "free-recall"],
            ["knowledge-based", "associative"],
            ["inherence-based", "behavioral"],
            ["inherence-based", "physiological"],
            ["possession-based", "digital"],
            ["possession-based", "physical"],
        ):
            assert resolve_path(facet, path).is_leaf

    def test_employment_hierarchy_paths_resolve(self, tech_scheme):
        facet = tech_scheme.facet("authenticator-employment")
        assert resolve_path(facet, ["multi", "sequential", "ordered"]).is_leaf
        assert resolve_path(facet, ["multi", "sequential", "unordered"]).is_leaf
        assert resolve_path(facet, ["single"]).is_leaf
        assert resolve_path(facet, ["multi", "parallel"]).is_leaf

    def test_contextuality_is_the_only_optional_facet(self, tech_scheme, auth_scheme):
        optional = [f.name for f in tech_scheme.facets if f.optional]
        assert optional == ["contextuality"]
        assert [f.name for f in auth_scheme.facets if f.optional] == []

    def test_schemes_are_constant_functions(self):
        assert authenticator_scheme() == authenticator_scheme()
        assert technique_scheme() == technique_scheme()

    def test_facet_aliases_resolve(self, auth_scheme, tech_scheme):
        assert auth_scheme.facet("factor").name == "authentication-factor"
        assert tech_scheme.facet("employment").name == "authenticator-employment"


class TestEntryTypes:
    def test_interaction_used_must_be_non_empty(self):
        with pytest.raises(ValueError):
            Employment("pin", 1, ())

    def test_position_must_be_positive(self):
        with pytest.raises(ValueError):
            Employment("pin", 0)

    def test_technique_needs_an_employment(self):
        with pytest.raises(ValueError):
            make_technique("t", "single", "knowledge-based", employments=[])

    def test_review_record_vocabulary(self):
        with pytest.raises(ValueError):
            ReviewRecord("vibes", "accepted")
        with pytest.raises(ValueError):
            ReviewRecord("ontological", "maybe")


class TestDeriveFactor:
    def test_mixed_factors_give_multi_factor(self):
        resolve = resolver(toy_pin(), toy_touch())
        employments = [Employment("pin", 1), Employment("touch", 2)]
        assert derive_factor(employments, resolve) == ("multi-factor",)

    def test_shared_root_is_inherited(self):
        vein = make_authenticator("vein", "inherence-based.physiological")
        knuckle = make_authenticator("knuckle", "inherence-based.physiological")
        employments = [Employment("vein", 1), Employment("knuckle", 2)]
        assert derive_factor(employments, resolver(vein, knuckle)) == ("inherence-based",)

    def test_single_employment_inherits_its_factor(self):
        password = make_authenticator("password", "knowledge-based.free-recall")
        assert derive_factor([Employment("password", 1)], resolver(password)) == (
            "knowledge-based",
        )

    def test_unresolved_reference_raises(self):
        with pytest.raises(UnresolvedAuthenticatorError):
            derive_factor([Employment("ghost", 1)], resolver())

    def test_subset_counting_oracle(self):
        pool = [
            make_authenticator("a-know", "knowledge-based.free-recall"),
            make_authenticator("a-assoc", "knowledge-based.associative"),
            make_authenticator("a-beh", "inherence-based.behavioral"),
            make_authenticator("a-phys", "inherence-based.physiological"),
            make_authenticator("a-dig", "possession-based.digital"),
        ]
        resolve = resolver(*pool)
        for size in range(1, len(pool) + 1):
            for subset in itertools.combinations(pool, size):
                roots = {a.assignment.paths("authentication-factor")[0][0] for a in subset}
                expected = ("multi-factor",) if len(roots) >= 2 else (next(iter(roots)),)
                employments = [Employment(a.id, i + 1) for i, a in enumerate(subset)]
                assert derive_factor(employments, resolve) == expected


class TestCheckConsistency:
    def trio(self):
        return toy_pin(), toy_touch(), toy_context_aware_touch()

    def test_reference_technique_is_consistent(self):
        pin, touch, cat = self.trio()
        assert check_consistency(cat, resolver(pin, touch)) == []

    def test_c2_fires_when_factor_is_wrong(self):
        pin, touch, cat = self.trio()
        broken = make_technique(
            "cat", "multi.sequential.ordered", "knowledge-based",
            employments=list(cat.employments),
        )
        rules = [v.rule for v in check_consistency(broken, resolver(pin, touch))]
        assert rules == ["C2"]

    def test_c1_fires_on_single_with_two_employments(self):
        pin, touch, _ = self.trio()
        broken = make_technique(
            "t", "single", "multi-factor", employments=["pin", "touch"]
        )
        rules = [v.rule for v in check_consistency(broken, resolver(pin, touch))]
        assert rules == ["C1"]

    def test_c1_fires_on_multi_with_one_employment(self):
        vein = make_authenticator("vein", "inherence-based.physiological")
        broken = make_technique("t", "multi.parallel", "inherence-based", ["vein"])
        rules = [v.rule for v in check_consistency(broken, resolver(vein))]
        assert rules == ["C1"]

    def test_c3_fires_for_passive_knowledge_authenticator(self):
        pin, touch, cat = self.trio()
        passive_pin = make_authenticator(
            "pin", "knowledge-based.free-recall",
            interaction=["passive"], subject=["human"], output="static",
            status="complete",
        )
        technique = make_technique("pin-login", "single", "knowledge-based", ["pin"])
        rules = [v.rule for v in check_consistency(technique, resolver(passive_pin))]
        assert rules == ["C3"]
        # any technique employing the edited authenticator reports C3
        rules = {v.rule for v in check_consistency(cat, resolver(passive_pin, touch))}
        assert "C3" in rules

    def test_c3_skipped_when_interaction_unclassified(self):
        password = make_authenticator("pw", "knowledge-based.free-recall")
        technique = make_technique("login", "single", "knowledge-based", ["pw"])
        assert check_consistency(technique, resolver(password)) == []

    def test_c4_union_must_match(self):
        pin, touch, _ = self.trio()
        technique = make_technique(
            "t", "multi.parallel", "multi-factor",
            employments=[Employment("pin", 1, ("active",)), Employment("touch", 2, ("active",))],
            subject_interaction=["active"],
        )
        assert check_consistency(technique, resolver(pin, touch)) == []
        # a passively used employment flips the computed union
        flipped = make_technique(
            "t", "multi.parallel", "multi-factor",
            employments=[Employment("pin", 1, ("active",)), Employment("touch", 2, ("passive",))],
            subject_interaction=["active"],
        )
        rules = [v.rule for v in check_consistency(flipped, resolver(pin, touch))]
        assert rules == ["C4"]

    def test_c4_falls_back_to_full_interaction_set(self):
        pin, touch, _ = self.trio()
        technique = make_technique(
            "t", "multi.parallel", "multi-factor",
            employments=["pin", "touch"],
            subject_interaction=["active"],
        )
        # touch contributes {active, passive}, so the union is not {active}
        rules = [v.rule for v in check_consistency(technique, resolver(pin, touch))]
        assert rules == ["C4"]

    def test_c5_subject_must_be_supported_by_every_authenticator(self):
        pin, touch, _ = self.trio()
        technique = make_technique(
            "t", "multi.parallel", "multi-factor",
            employments=[Employment("pin", 1, ("active",)), Employment("touch", 2, ("passive",))],
            subject=["human", "machine"],
        )
        rules = [v.rule for v in check_consistency(technique, resolver(pin, touch))]
        assert rules == ["C5"]

    def test_c6_needs_distinct_positions(self):
        pin, touch, _ = self.trio()
        technique = make_technique(
            "t", "multi.sequential.ordered", "multi-factor",
            employments=[Employment("pin", 1), Employment("touch", 1)],
        )
        rules = [v.rule for v in check_consistency(technique, resolver(pin, touch))]
        assert rules == ["C6"]

    def test_unresolved_employment_raises(self):
        technique = make_technique("t", "single", "knowledge-based", ["ghost"])
        with pytest.raises(UnresolvedAuthenticatorError) as exc:
            check_consistency(technique, resolver())
        assert exc.value.authenticator_id == "ghost"

    def test_accepted_technique_factor_equals_derived(self):
        pin, touch, cat = self.trio()
        resolve = resolver(pin, touch)
        assert check_consistency(cat, resolve) == []
        assert derive_factor(cat.employments, resolve) == cat.assignment.paths("factor")[0]


class TestValidateEmployments:
    def test_positions_must_be_gapless(self):
        pin, touch = toy_pin(), toy_touch()
        technique = make_technique(
            "t", "multi.parallel", "multi-factor",
            employments=[Employment("pin", 1), Employment("touch", 3)],
        )
        rules = [v.rule for v in validate_employments(technique, resolver(pin, touch))]
        assert rules == ["EmploymentPositions"]

    def test_interaction_used_must_be_supported(self):
        pin = toy_pin()
        technique = make_technique(
            "t", "single", "knowledge-based",
            employments=[Employment("pin", 1, ("passive",))],
        )
        rules = [v.rule for v in validate_employments(technique, resolver(pin))]
        assert rules == ["EmploymentInteraction"]

    def test_clean_reference_technique(self):
        pin, touch, cat = toy_pin(), toy_touch(), toy_context_aware_touch()
        assert validate_employments(cat, resolver(pin, touch)) == []
