from fractions import Fraction
from itertools import product

import pytest

from prorep import (
    ApportionmentInstance,
    DivisibilityError,
    WeightSequence,
    embed,
    extract_seats,
    induced_apportionment,
    induced_via_enumeration,
    monroe_satisfaction,
    partylist_maxload,
    partylist_monroe_value,
    partylist_owa_value,
    partylist_sumsquares,
)
from prorep.embedding import compositions

PAV = WeightSequence.pav()
CC = WeightSequence.chamberlin_courant()
TOPK = WeightSequence.top_k()

REFERENCE = ApportionmentInstance((6, 7, 39, 48), 10)


def block_committee(embedding, x):
    """The committee taking the first ``x_i`` candidates of each block."""
    return frozenset().union(
        *(sorted(block)[:seats] for block, seats in zip(embedding.candidate_blocks, x))
    )


class TestEmbed:
    def test_small_instance(self):
        profile, k, embedding = embed(ApportionmentInstance((2, 1), 2))
        assert profile.num_candidates == 4
        assert profile.num_voters == 3
        assert k == 2
        assert profile.approvals[0] == profile.approvals[1] == frozenset({1, 2})
        assert profile.approvals[2] == frozenset({3, 4})
        assert embedding.candidate_blocks == (frozenset({1, 2}), frozenset({3, 4}))
        assert embedding.voter_blocks == (frozenset({1, 2}), frozenset({3,}))

    def test_hundred_voters(self):
        profile, k, _ = embed(ApportionmentInstance((20, 40, 30, 10), 10))
        assert profile.num_candidates == 40
        assert profile.num_voters == 100
        assert k == 10

    def test_reference_dimensions(self):
        profile, k, _ = embed(REFERENCE)
        assert (profile.num_candidates, profile.num_voters, k) == (40, 100, 10)


class TestExtractSeats:
    def test_counts_per_block(self):
        _, _, embedding = embed(ApportionmentInstance((20, 40, 30, 10), 10))
        committee = block_committee(embedding, (2, 4, 3, 1))
        assert extract_seats(embedding, committee) == (2, 4, 3, 1)

    def test_all_one_block(self):
        _, _, embedding = embed(ApportionmentInstance((2, 1), 2))
        assert extract_seats(embedding, frozenset({1, 2})) == (2, 0)

    def test_wrong_size_rejected(self):
        _, _, embedding = embed(ApportionmentInstance((2, 1), 2))
        with pytest.raises(ValueError):
            extract_seats(embedding, frozenset({1}))


class TestPartyListValues:
    def test_owa_value_with_zeroed_first_weight(self):
        truncated = WeightSequence.truncated(PAV, 1)
        assert partylist_owa_value(REFERENCE, truncated, (0, 0, 5, 5)) == Fraction(2233, 20)

    def test_owa_value_cc_covers_total(self):
        inst = ApportionmentInstance((3, 4, 5), 6)
        assert partylist_owa_value(inst, CC, (2, 2, 2)) == 12

    def test_owa_value_single_party_takes_all(self):
        inst = ApportionmentInstance((3, 4), 3)
        assert partylist_owa_value(inst, PAV, (3, 0)) == 3 * PAV.satisfaction(3)

    def test_maxload(self):
        assert partylist_maxload(REFERENCE, (0, 0, 4, 6)) == Fraction(1, 8)
        assert Fraction(4, 39) < Fraction(6, 48)

    def test_maxload_all_to_first(self):
        inst = ApportionmentInstance((5, 9), 4)
        assert partylist_maxload(inst, (4, 0)) == Fraction(4, 5)

    def test_sumsquares_value_and_optimality(self):
        value = partylist_sumsquares(REFERENCE, (1, 1, 4, 4))
        assert value == Fraction(575, 546)
        others = (
            partylist_sumsquares(REFERENCE, x) for x in compositions(10, 4)
        )
        assert all(other >= value for other in others)

    def test_sumsquares_corner(self):
        inst = ApportionmentInstance((2, 3), 4)
        assert partylist_sumsquares(inst, (0, 4)) == Fraction(16, 3)

    def test_monroe_value(self):
        assert partylist_monroe_value(REFERENCE, (0, 1, 4, 5)) == 94

    def test_monroe_value_matches_embedded_rule(self):
        profile, _, embedding = embed(REFERENCE)
        committee = block_committee(embedding, (0, 1, 4, 5))
        assert monroe_satisfaction(profile, committee) == 94

    def test_monroe_value_proportional_saturates(self):
        inst = ApportionmentInstance((4, 6), 5)
        assert partylist_monroe_value(inst, (2, 3)) == 10

    def test_monroe_divisibility(self):
        with pytest.raises(DivisibilityError):
            partylist_monroe_value(ApportionmentInstance((3, 4), 4), (2, 2))


class TestInducedApportionment:
    def test_pav_matches_highest_averages(self):
        assert induced_apportionment("owa", REFERENCE, PAV) == {(0, 0, 4, 6)}

    def test_var_phragmen_matches_odd_divisors(self):
        assert induced_apportionment("var-phragmen", REFERENCE) == {(1, 1, 4, 4)}

    def test_max_phragmen(self):
        assert induced_apportionment("max-phragmen", REFERENCE) == {(0, 0, 4, 6)}

    def test_monroe(self):
        assert induced_apportionment("monroe", REFERENCE) == {(0, 1, 4, 5)}

    def test_topk_all_seats_to_largest(self):
        assert induced_apportionment("owa", REFERENCE, TOPK) == {(0, 0, 0, 10)}

    def test_sav(self):
        assert induced_apportionment("sav", REFERENCE) == {(0, 0, 0, 10)}

    def test_mav_maximizes_smallest_block(self):
        outcomes = induced_apportionment("mav", REFERENCE)
        assert outcomes == {x for x in compositions(10, 4) if min(x) == 2}

    def test_truncated_weights_drop_small_parties(self):
        truncated = WeightSequence.truncated(PAV, 1)
        assert induced_apportionment("owa", REFERENCE, truncated) == {(0, 0, 4, 6)}
        assert partylist_owa_value(REFERENCE, truncated, (0, 0, 4, 6)) == Fraction(2237, 20)

    def test_sequential_pav_reference(self):
        inst = ApportionmentInstance((20, 40, 30, 10), 10)
        assert induced_apportionment("seq-owa", inst, PAV) == {(2, 4, 3, 1)}

    def test_tied_top_parties_split_freely(self):
        # Constant weights make every split among tied leaders optimal.
        inst = ApportionmentInstance((5, 5, 1), 3)
        assert induced_apportionment("owa", inst, TOPK) == {
            (3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0),
        }

    def test_unknown_rule(self):
        with pytest.raises(ValueError):
            induced_apportionment("borda", REFERENCE)

    def test_missing_weights(self):
        with pytest.raises(ValueError):
            induced_apportionment("owa", REFERENCE)

    def test_unexpected_weights(self):
        with pytest.raises(ValueError):
            induced_apportionment("monroe", REFERENCE, PAV)

    def test_monroe_divisibility_propagates(self):
        with pytest.raises(DivisibilityError):
            induced_apportionment("monroe", ApportionmentInstance((3, 4), 4))


RULES = (
    ("owa", PAV),
    ("owa", CC),
    ("owa", TOPK),
    ("owa", WeightSequence.truncated(PAV, 1)),
    ("seq-owa", PAV),
    ("max-phragmen", None),
    ("var-phragmen", None),
    ("sav", None),
    ("mav", None),
)


@pytest.mark.parametrize("rule,weights", RULES, ids=lambda x: getattr(x, "label", x))
def test_closed_forms_match_committee_enumeration(rule, weights):
    for p in (1, 2, 3):
        for votes in product((1, 2, 4), repeat=p):
            for h in (1, 2, 3):
                inst = ApportionmentInstance(votes, h)
                assert induced_apportionment(rule, inst, weights) == induced_via_enumeration(
                    rule, inst, weights
                ), (rule, votes, h)


def test_monroe_closed_form_matches_enumeration():
    for p in (1, 2, 3):
        for votes in product((1, 2, 4), repeat=p):
            for h in (1, 2, 3):
                inst = ApportionmentInstance(votes, h)
                if inst.total_votes % h:
                    continue
                assert induced_apportionment("monroe", inst) == induced_via_enumeration(
                    "monroe", inst
                )


def test_compositions_enumerates_simplex():
    assert sorted(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert len(list(compositions(5, 3))) == 21
