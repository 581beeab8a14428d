from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from prorep import (
    ApportionmentInstance,
    ApprovalProfile,
    EnumerationCapError,
    SweepConfig,
    WeightSequence,
    check_cambridge,
    check_lower_quota,
    check_penrose,
    check_pjr,
    check_quota,
    check_threshold,
    embed,
    penrose_lower_bounds,
    uniqueness_witness,
    verify_claim,
)
from prorep.properties import generate_instances

PAV = WeightSequence.pav()
REFERENCE = ApportionmentInstance((6, 7, 39, 48), 10)


class TestQuotaChecks:
    def test_lower_quota(self):
        assert check_lower_quota(REFERENCE, (0, 0, 4, 6))
        assert not check_lower_quota(REFERENCE, (0, 0, 0, 10))

    def test_quota(self):
        assert check_quota(REFERENCE, (0, 1, 4, 5))
        assert not check_quota(REFERENCE, (0, 0, 4, 6))


class TestPenrose:
    def test_perfect_squares(self):
        inst = ApportionmentInstance((9, 4, 1), 6)
        assert penrose_lower_bounds(inst) == (3, 2, 1)
        assert check_penrose(inst, (3, 2, 1))
        assert not check_penrose(inst, (4, 1, 1))

    def test_single_party(self):
        inst = ApportionmentInstance((7,), 4)
        assert check_penrose(inst, (4,))

    def test_irrational_shares_are_decided_exactly(self):
        # sqrt(2)/(sqrt(2)+sqrt(8)) = 1/3 exactly: at h = 3 the bound for
        # party 1 sits exactly on the integer 1.
        inst = ApportionmentInstance((2, 8), 3)
        assert penrose_lower_bounds(inst) == (1, 2)

    @given(
        roots=st.lists(st.integers(1, 12), min_size=1, max_size=4),
        h=st.integers(1, 9),
    )
    @settings(max_examples=100)
    def test_square_instances_match_integer_oracle(self, roots, h):
        inst = ApportionmentInstance(tuple(r * r for r in roots), h)
        total = sum(roots)
        assert penrose_lower_bounds(inst) == tuple(h * r // total for r in roots)


class TestCambridge:
    def test_equal_split(self):
        inst = ApportionmentInstance((1, 1), 10)
        assert check_cambridge(inst, (5, 5))

    def test_shifted_floor_binds(self):
        inst = ApportionmentInstance((3, 1), 12)
        assert check_cambridge(inst, (6, 6))
        assert not check_cambridge(inst, (5, 7))

    def test_below_base_fails(self):
        inst = ApportionmentInstance((1, 1), 11)
        assert not check_cambridge(inst, (4, 7))

    def test_house_too_small_rejected(self):
        with pytest.raises(ValueError):
            check_cambridge(ApportionmentInstance((1, 1), 9), (4, 5))

    def test_custom_base(self):
        inst = ApportionmentInstance((1, 1), 6)
        assert check_cambridge(inst, (3, 3), base=2)


class TestThreshold:
    def test_reference_pass(self):
        assert check_threshold(REFERENCE, (0, 0, 5, 5), 1)

    def test_small_party_below_hurdle(self):
        assert not check_threshold(REFERENCE, (1, 0, 4, 5), 1)

    def test_single_seated_party(self):
        inst = ApportionmentInstance((5, 3), 4)
        assert check_threshold(inst, (4, 0), 3)

    def test_hurdle_bounds(self):
        with pytest.raises(ValueError):
            check_threshold(REFERENCE, (0, 0, 5, 5), 10)
        with pytest.raises(ValueError):
            check_threshold(REFERENCE, (0, 0, 5, 5), 0)


def block_committee(embedding, x):
    return frozenset().union(
        *(sorted(block)[:seats] for block, seats in zip(embedding.candidate_blocks, x))
    )


class TestPjr:
    def test_partylist_pass(self):
        profile, k, embedding = embed(REFERENCE)
        assert check_pjr(profile, k, block_committee(embedding, (0, 0, 4, 6)))

    def test_partylist_violation(self):
        profile, k, embedding = embed(REFERENCE)
        assert not check_pjr(profile, k, block_committee(embedding, (10, 0, 0, 0)))

    def test_brute_force_single_winner(self):
        # All voters share candidate 1, so with k = 1 the committee must
        # intersect the union of their ballots.
        profile = ApprovalProfile(4, ({1, 2}, {1, 3}, {1}))
        assert check_pjr(profile, 1, frozenset({2}), method="brute")
        assert not check_pjr(profile, 1, frozenset({4}), method="brute")

    def test_brute_force_group_needs_two_seats(self):
        profile = ApprovalProfile(4, ({1, 2}, {1, 2}, {3}, {4}))
        assert not check_pjr(profile, 2, frozenset({3, 4}), method="brute")
        assert check_pjr(profile, 2, frozenset({1, 2}), method="brute")

    def test_voter_cap_on_general_profiles(self):
        profile = ApprovalProfile(2, tuple({1, 2} if i % 2 else {1} for i in range(20)))
        with pytest.raises(EnumerationCapError):
            check_pjr(profile, 2, frozenset({1, 2}), method="brute")

    def test_partylist_method_requires_partylist(self):
        profile = ApprovalProfile(3, ({1, 2}, {2, 3}))
        with pytest.raises(ValueError):
            check_pjr(profile, 2, frozenset({1, 2}), method="party-list")

    @given(
        votes=st.lists(st.integers(1, 4), min_size=1, max_size=3),
        h=st.integers(1, 3),
        data=st.data(),
    )
    @settings(max_examples=60, deadline=None)
    def test_blockwise_matches_brute_force_on_embeddings(self, votes, h, data):
        inst = ApportionmentInstance(tuple(votes), h)
        if inst.total_votes > 9:
            return
        profile, k, embedding = embed(inst)
        from prorep.embedding import compositions

        x = data.draw(st.sampled_from(sorted(compositions(h, len(votes)))))
        committee = block_committee(embedding, x)
        fast = check_pjr(profile, k, committee)
        assert fast == check_pjr(profile, k, committee, method="brute")
        assert fast == check_lower_quota(inst, x)


class TestUniquenessWitness:
    def test_harmonic_weights_pass(self):
        for size in (3, 4):
            assert uniqueness_witness(PAV, 2, size) is None

    def test_coverage_weights_fail(self):
        witness = uniqueness_witness(WeightSequence.chamberlin_courant(), 2, 3)
        assert witness is not None
        instance, x = witness
        assert instance.votes == (6, 2, 2, 2)
        assert not check_lower_quota(instance, x)

    def test_constant_weights_fail(self):
        witness = uniqueness_witness(WeightSequence.top_k(), 2, 3)
        assert witness is not None
        instance, x = witness
        assert instance.votes == (3, 5, 5, 5)
        assert not check_lower_quota(instance, x)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            uniqueness_witness(PAV, 0, 3)
        with pytest.raises(ValueError):
            uniqueness_witness(PAV, 2, 1)


class TestSweepConfig:
    def test_random_requires_seed(self):
        with pytest.raises(ValueError):
            SweepConfig(mode="random")

    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            SweepConfig(min_parties=3, max_parties=2)
        with pytest.raises(ValueError):
            SweepConfig(max_votes=0)
        with pytest.raises(ValueError):
            SweepConfig(mode="surprise")

    def test_exhaustive_grid_size(self):
        cfg = SweepConfig(min_parties=2, max_parties=3, max_votes=10, max_seats=5)
        assert sum(1 for _ in generate_instances(cfg)) == 5500

    def test_random_is_deterministic(self):
        cfg = SweepConfig(mode="random", trials=20, seed=99, max_parties=5, max_votes=60, max_seats=8)
        first = [(i.votes, i.seats) for i in generate_instances(cfg)]
        second = [(i.votes, i.seats) for i in generate_instances(cfg)]
        assert first == second


class TestVerifyClaim:
    SMALL = SweepConfig(min_parties=2, max_parties=3, max_votes=5, max_seats=4)

    def test_passing_claim(self):
        report = verify_claim("pav-dhondt", self.SMALL)
        assert report.passed
        assert report.instances_tested == 600
        assert report.elapsed_seconds >= 0

    def test_divisibility_filter(self):
        report = verify_claim("monroe-lr", self.SMALL)
        assert report.passed
        assert 0 < report.instances_tested < 600

    def test_unknown_claim(self):
        with pytest.raises(ValueError):
            verify_claim("flat-earth", self.SMALL)

    def test_increasing_weights_break_greedy_equivalence(self):
        # With increasing weights the greedy path can lock in seats the
        # optimal rule would never give, so the claim genuinely fails.
        increasing = WeightSequence.explicit([0, 1], 1)
        report = verify_claim("seq-equiv", self.SMALL, weights=increasing)
        assert not report.passed
        assert report.failures[0].detail

    def test_owa_divisor_rejects_zero_weights(self):
        with pytest.raises(ValueError):
            verify_claim(
                "owa-divisor",
                SweepConfig(min_parties=2, max_parties=2, max_votes=2, max_seats=2),
                weights=WeightSequence.chamberlin_courant(),
            )

    def test_failure_reporting_caps(self):
        increasing = WeightSequence.explicit([0, 1], 1)
        report = verify_claim("seq-equiv", self.SMALL, weights=increasing, max_failures=3)
        assert len(report.failures) == 3
