import pytest
from hypothesis import given, settings, strategies as st

from prorep import (
    ApportionmentInstance,
    DivisorSequence,
    TieExplosionError,
    divisor_apportion,
    largest_remainder,
    move_seat,
    satisfies_lower_quota,
    satisfies_quota,
)

DHONDT = DivisorSequence.dhondt()
SAINTE_LAGUE = DivisorSequence.sainte_lague()


class TestMoveSeat:
    def test_moves_one_seat(self):
        assert move_seat((0, 0, 4, 6), 4, 3) == (0, 0, 5, 5)

    def test_two_parties(self):
        assert move_seat((1, 0), 1, 2) == (0, 1)

    def test_same_party_rejected(self):
        with pytest.raises(ValueError):
            move_seat((2, 2, 2), 2, 2)

    def test_empty_party_rejected(self):
        with pytest.raises(ValueError):
            move_seat((0, 2), 1, 2)


class TestDivisorApportion:
    def test_reference_instance_dhondt(self):
        inst = ApportionmentInstance((6, 7, 39, 48), 10)
        assert divisor_apportion(inst, DHONDT) == {(0, 0, 4, 6)}

    def test_reference_instance_sainte_lague(self):
        inst = ApportionmentInstance((6, 7, 39, 48), 10)
        assert divisor_apportion(inst, SAINTE_LAGUE) == {(1, 1, 4, 4)}

    def test_symmetric_tie(self):
        inst = ApportionmentInstance((1, 1), 1)
        assert divisor_apportion(inst, DHONDT) == {(1, 0), (0, 1)}

    def test_impervious_sequence_guarantees_first_seats(self):
        # With d(0) = 0 every party's first claim is infinite, ordered by
        # votes among themselves: the two strongest parties get the seats.
        ds = DivisorSequence.explicit([0], 1, 1)
        inst = ApportionmentInstance((9, 2, 3), 2)
        assert divisor_apportion(inst, ds) == {(1, 0, 1)}

    def test_impervious_all_first_claims_beat_finite(self):
        ds = DivisorSequence.explicit([0], 1, 1)
        inst = ApportionmentInstance((100, 1, 1), 3)
        assert divisor_apportion(inst, ds) == {(1, 1, 1)}

    def test_tie_explosion_cap(self):
        inst = ApportionmentInstance((1,) * 30, 15)
        with pytest.raises(TieExplosionError):
            divisor_apportion(inst, DHONDT)

    def test_repeated_divisor_values_tie_within_party(self):
        # d = (1, 1, 2, ...) lets one party place two equal claims.
        ds = DivisorSequence.explicit([1, 1], 1, 0)
        inst = ApportionmentInstance((2, 2), 3)
        assert divisor_apportion(inst, ds) == {(2, 1), (1, 2)}


class TestLargestRemainder:
    def test_reference_instance(self):
        inst = ApportionmentInstance((6, 7, 39, 48), 10)
        assert largest_remainder(inst) == {(0, 1, 4, 5)}

    def test_exact_proportionality(self):
        assert largest_remainder(ApportionmentInstance((50, 50), 2)) == {(1, 1)}

    def test_three_way_remainder_tie(self):
        inst = ApportionmentInstance((1, 1, 1), 2)
        assert largest_remainder(inst) == {(1, 1, 0), (1, 0, 1), (0, 1, 1)}

    def test_tie_explosion_cap(self):
        inst = ApportionmentInstance((1,) * 40, 20)
        with pytest.raises(TieExplosionError):
            largest_remainder(inst, max_outcomes=100)


class TestQuotaChecks:
    def test_lower_quota_reference(self):
        inst = ApportionmentInstance((6, 7, 39, 48), 10)
        assert satisfies_lower_quota(inst, (0, 0, 4, 6))
        assert not satisfies_lower_quota(inst, (0, 0, 0, 10))

    def test_quota_reference(self):
        inst = ApportionmentInstance((6, 7, 39, 48), 10)
        assert satisfies_quota(inst, (0, 1, 4, 5))
        assert not satisfies_quota(inst, (0, 0, 4, 6))

    def test_single_party(self):
        inst = ApportionmentInstance((5,), 3)
        assert satisfies_lower_quota(inst, (3,))
        assert satisfies_quota(inst, (3,))


instances = st.builds(
    ApportionmentInstance,
    st.lists(st.integers(1, 30), min_size=1, max_size=5).map(tuple),
    st.integers(1, 8),
)


@given(instances)
@settings(max_examples=80)
def test_outcomes_are_valid_distributions(inst):
    for method in (lambda i: divisor_apportion(i, DHONDT), largest_remainder):
        for x in method(inst):
            assert len(x) == inst.num_parties
            assert sum(x) == inst.seats
            assert all(s >= 0 for s in x)


@given(instances, st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_permutation_equivariance(inst, rng):
    order = list(range(inst.num_parties))
    rng.shuffle(order)
    permuted = ApportionmentInstance(tuple(inst.votes[i] for i in order), inst.seats)
    for method in (lambda i: divisor_apportion(i, SAINTE_LAGUE), largest_remainder):
        expected = {tuple(x[i] for i in order) for x in method(inst)}
        assert method(permuted) == expected


@given(instances, st.integers(2, 7))
@settings(max_examples=60)
def test_divisor_methods_scale_invariant(inst, factor):
    scaled = ApportionmentInstance(tuple(v * factor for v in inst.votes), inst.seats)
    assert divisor_apportion(scaled, DHONDT) == divisor_apportion(inst, DHONDT)


@given(instances)
@settings(max_examples=100)
def test_dhondt_respects_lower_quota(inst):
    for x in divisor_apportion(inst, DHONDT):
        assert satisfies_lower_quota(inst, x)


@given(instances)
@settings(max_examples=100)
def test_largest_remainder_respects_quota(inst):
    for x in largest_remainder(inst):
        assert satisfies_quota(inst, x)


@given(instances)
@settings(max_examples=60)
def test_quota_implies_lower_quota(inst):
    h = inst.seats
    from prorep.embedding import compositions

    for x in compositions(h, inst.num_parties):
        if satisfies_quota(inst, x):
            assert satisfies_lower_quota(inst, x)
