"""Tests for the choice oracles."""

import pytest
from pydantic import ValidationError

from choicenet.exceptions import ContractViolation
from choicenet.fields.choice_oracle import corruption_map, disagreement_points, representative
from choicenet.fields.label_field import LabelField, equivalent, make_base, value_at
from choicenet.models.oracle import OracleKind, OracleTag

STRIP = OracleKind()
ADVERSARIAL = OracleKind(
    oracle="adversarial",
    corruption=[{"point": [0.25], "value": 1.0}, {"point": [0.5], "value": 0.5}],
)


class TestOracleKind:
    """Test cases for oracle descriptions."""

    def test_default_is_strip_exceptions(self):
        assert STRIP.tag is OracleTag.STRIP_EXCEPTIONS
        assert STRIP.corruption == []

    def test_alias_round_trip(self):
        dumped = ADVERSARIAL.model_dump(mode="json", by_alias=True)
        assert dumped["oracle"] == "adversarial"
        assert OracleKind.model_validate(dumped) == ADVERSARIAL

    def test_strip_exceptions_takes_no_corruption(self):
        with pytest.raises(ValidationError, match="only allowed"):
            OracleKind(oracle="strip_exceptions", corruption=[{"point": [0.1], "value": 0.0}])

    def test_corruption_points_distinct(self):
        with pytest.raises(ValidationError, match="distinct"):
            OracleKind(
                oracle="adversarial",
                corruption=[{"point": [0.1], "value": 0.0}, {"point": [0.1], "value": 1.0}],
            )

    def test_corruption_dimension_checked(self):
        with pytest.raises(ContractViolation):
            corruption_map(ADVERSARIAL, 2)


class TestRepresentative:
    """Test cases for the canonical class member."""

    def test_strip_exceptions(self, identity_field):
        field = LabelField(identity_field.base, {(0.2,): 0.9})
        chosen = representative(STRIP, field)

        assert dict(chosen.exceptions) == {}
        assert chosen.base == field.base
        assert equivalent(chosen, field)

    def test_equivalent_inputs_give_identical_outputs(self, identity_field):
        a = LabelField(identity_field.base, {(0.2,): 0.9})
        b = LabelField(identity_field.base, {(0.7,): 0.1, (0.3,): 0.0})

        for kind in (STRIP, ADVERSARIAL):
            first, second = representative(kind, a), representative(kind, b)
            assert first.base == second.base
            assert dict(first.exceptions) == dict(second.exceptions)
            assert first.integrable == second.integrable

    def test_adversarial_applies_corruption(self, identity_field):
        chosen = representative(ADVERSARIAL, identity_field)

        assert value_at(chosen, [0.25]) == 1.0
        assert value_at(chosen, [0.75]) == 0.75
        assert equivalent(chosen, identity_field)


class TestDisagreement:
    """Test cases for the finite disagreement set."""

    def test_strip_disagrees_on_true_exceptions(self, identity_field):
        truth = LabelField(identity_field.base, {(0.2,): 0.9, (0.6,): 0.6})
        # (0.6,) carries the base value, so the representative agrees there
        assert disagreement_points(STRIP, truth).points == ((0.2,),)

    def test_adversarial_disagrees_on_changed_points(self, identity_field):
        # the corruption at 0.5 equals the base value
        assert disagreement_points(ADVERSARIAL, identity_field).points == ((0.25,),)

    def test_no_disagreement_without_exceptions(self):
        truth = LabelField(make_base("sin2pi", 2), {})
        assert len(disagreement_points(STRIP, truth)) == 0
