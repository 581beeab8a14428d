"""Running committee rules on party-list races, and back.

An apportionment instance turns into an approval election by giving
every party a block of ``h`` interchangeable candidates and one voter
per vote, each approving exactly their party's block; committees map
back to seat distributions by counting members per block.

On such profiles every committee rule in this package depends on a
committee only through the per-party member counts, so the induced
apportionment can be computed by optimizing a closed form over all
compositions of ``h`` instead of enumerating committees.  The
enumeration path is kept for cross-validation at tiny sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import multiwinner
from .core import (
    ApportionmentInstance,
    ApprovalProfile,
    Committee,
    DivisibilityError,
    SeatDistribution,
    check_distribution,
)
from .sequences import WeightSequence

INDUCIBLE_RULES = (
    "owa",
    "seq-owa",
    "monroe",
    "max-phragmen",
    "var-phragmen",
    "sav",
    "mav",
)


@dataclass(frozen=True)
class PartyListEmbedding:
    """Bookkeeping of a party-list embedding.

    ``candidate_blocks[i]`` holds the ``h`` candidate ids of party
    ``i + 1``; ``voter_blocks[i]`` the ids of its voters.
    """

    instance: ApportionmentInstance
    candidate_blocks: tuple[frozenset[int], ...]
    voter_blocks: tuple[frozenset[int], ...]
    committee_size: int


def embed(instance: ApportionmentInstance) -> tuple[ApprovalProfile, int, PartyListEmbedding]:
    """Build the party-list profile for ``instance``.

    Party ``i`` receives candidates ``(i-1)*h + 1 .. i*h`` and its
    voters appear consecutively, each approving exactly that block.
    """
    h, p = instance.seats, instance.num_parties
    candidate_blocks = tuple(
        frozenset(range(i * h + 1, (i + 1) * h + 1)) for i in range(p)
    )
    ballots: list[frozenset[int]] = []
    voter_blocks: list[frozenset[int]] = []
    next_voter = 1
    for i, v in enumerate(instance.votes):
        voter_blocks.append(frozenset(range(next_voter, next_voter + v)))
        ballots.extend([candidate_blocks[i]] * v)
        next_voter += v
    profile = ApprovalProfile(p * h, tuple(ballots))
    return profile, h, PartyListEmbedding(instance, candidate_blocks, tuple(voter_blocks), h)


def extract_seats(embedding: PartyListEmbedding, committee: Committee) -> SeatDistribution:
    """Per-party member counts of ``committee``."""
    committee = frozenset(committee)
    if len(committee) != embedding.committee_size:
        raise ValueError(
            f"committee has {len(committee)} members, expected {embedding.committee_size}"
        )
    return tuple(len(block & committee) for block in embedding.candidate_blocks)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def partylist_owa_value(
    instance: ApportionmentInstance, weights: WeightSequence, x: SeatDistribution
) -> Fraction:
    """Total satisfaction of a seat distribution on the embedded profile:
    each party contributes its votes times the first ``x_i`` weights."""
    x = check_distribution(instance, x)
    return sum(
        (v * weights.satisfaction(s) for v, s in zip(instance.votes, x)),
        Fraction(0),
    )


def partylist_maxload(instance: ApportionmentInstance, x: SeatDistribution) -> Fraction:
    """Minimal achievable maximum voter load: ``max_i x_i / v_i``."""
    x = check_distribution(instance, x)
    return max(Fraction(s, v) for v, s in zip(instance.votes, x))


def partylist_sumsquares(instance: ApportionmentInstance, x: SeatDistribution) -> Fraction:
    """Minimal achievable sum of squared voter loads: ``sum_i x_i^2 / v_i``."""
    x = check_distribution(instance, x)
    return sum(
        (Fraction(s * s, v) for v, s in zip(instance.votes, x)),
        Fraction(0),
    )


def partylist_monroe_value(instance: ApportionmentInstance, x: SeatDistribution) -> Fraction:
    """Balanced-allocation satisfaction of a seat distribution:
    ``sum_i min(v_i, x_i * v_total / h)``; requires ``h | v_total``."""
    x = check_distribution(instance, x)
    h, total = instance.seats, instance.total_votes
    if total % h != 0:
        raise DivisibilityError(f"house size {h} must divide the total vote count {total}")
    per_seat = total // h
    return Fraction(sum(min(v, s * per_seat) for v, s in zip(instance.votes, x)))


def _scaled_table(weights: WeightSequence, upto: int) -> list[int]:
    """Prefix-sum satisfactions ``0..upto`` scaled to a common integer."""
    sums = [weights.satisfaction(j) for j in range(upto + 1)]
    scale = math.lcm(*(s.denominator for s in sums))
    return [int(s * scale) for s in sums]


def _argbest(
    instance: ApportionmentInstance, key, maximize: bool
) -> set[SeatDistribution]:
    best = None
    winners: set[SeatDistribution] = set()
    for x in compositions(instance.seats, instance.num_parties):
        value = key(x)
        if best is None or (value > best if maximize else value < best):
            best, winners = value, {x}
        elif value == best:
            winners.add(x)
    return winners


def _seq_owa_distributions(
    instance: ApportionmentInstance, weights: WeightSequence
) -> set[SeatDistribution]:
    """Greedy seat-by-seat allocation exploring every tie branch."""
    votes = instance.votes
    table = [weights.weight_at(j) for j in range(1, instance.seats + 1)]
    scale = math.lcm(*(w.denominator for w in table))
    gains = [int(w * scale) for w in table]
    frontier: set[SeatDistribution] = {(0,) * instance.num_parties}
    for _ in range(instance.seats):
        next_frontier: set[SeatDistribution] = set()
        for x in frontier:
            marginals = [v * gains[s] for v, s in zip(votes, x)]
            best = max(marginals)
            for i, gain in enumerate(marginals):
                if gain == best:
                    next_frontier.add(x[:i] + (x[i] + 1,) + x[i + 1 :])
        frontier = next_frontier
    return frontier


def induced_apportionment(
    rule: str,
    instance: ApportionmentInstance,
    weights: WeightSequence | None = None,
) -> set[SeatDistribution]:
    """Seat distributions the committee rule ``rule`` produces on the
    embedded party-list profile.

    ``rule`` is one of ``owa``, ``seq-owa`` (both need ``weights``),
    ``monroe``, ``max-phragmen``, ``var-phragmen``, ``sav``, ``mav``.
    Committees are never materialized: each rule's party-list closed
    form is optimized over all compositions of the house size, which
    yields the identical outcome set.
    """
    votes, h = instance.votes, instance.seats
    if rule in ("owa", "seq-owa"):
        if weights is None:
            raise ValueError(f"rule {rule!r} needs a weight sequence")
        if rule == "seq-owa":
            return _seq_owa_distributions(instance, weights)
        table = _scaled_table(weights, h)
        return _argbest(
            instance,
            lambda x: sum(v * table[s] for v, s in zip(votes, x)),
            maximize=True,
        )
    if weights is not None:
        raise ValueError(f"rule {rule!r} takes no weight sequence")
    if rule == "monroe":
        total = instance.total_votes
        if total % h != 0:
            raise DivisibilityError(
                f"house size {h} must divide the total vote count {total}"
            )
        per_seat = total // h
        return _argbest(
            instance,
            lambda x: sum(min(v, s * per_seat) for v, s in zip(votes, x)),
            maximize=True,
        )
    if rule == "max-phragmen":
        scale = math.lcm(*votes)
        return _argbest(
            instance,
            lambda x: max(s * (scale // v) for v, s in zip(votes, x)),
            maximize=False,
        )
    if rule == "var-phragmen":
        scale = math.lcm(*votes)
        return _argbest(
            instance,
            lambda x: sum(s * s * (scale // v) for v, s in zip(votes, x)),
            maximize=False,
        )
    if rule == "sav":
        return _argbest(
            instance,
            lambda x: sum(v * s for v, s in zip(votes, x)),
            maximize=True,
        )
    if rule == "mav":
        return _argbest(instance, min, maximize=True)
    raise ValueError(f"unknown rule {rule!r}; expected one of {INDUCIBLE_RULES}")


def induced_via_enumeration(
    rule: str,
    instance: ApportionmentInstance,
    weights: WeightSequence | None = None,
    max_committees: int = multiwinner.DEFAULT_MAX_COMMITTEES,
) -> set[SeatDistribution]:
    """Induced apportionment through actual committee enumeration.

    Exponentially slower than :func:`induced_apportionment`; intended
    for cross-validating the closed forms at tiny sizes.
    """
    profile, k, embedding = embed(instance)
    if rule in ("owa", "seq-owa") and weights is None:
        raise ValueError(f"rule {rule!r} needs a weight sequence")
    if rule == "owa":
        winners = multiwinner.owa_winners(profile, k, weights, max_committees)
    elif rule == "seq-owa":
        winners = multiwinner.seq_owa_winners(profile, k, weights, max_committees)
    elif rule == "monroe":
        winners = multiwinner.monroe_winners(profile, k, max_committees)
    elif rule == "max-phragmen":
        winners = multiwinner.max_phragmen_winners(profile, k, max_committees)
    elif rule == "var-phragmen":
        winners = multiwinner.var_phragmen_winners(profile, k, max_committees)
    elif rule == "sav":
        winners = multiwinner.sav_winners(profile, k, max_committees)
    elif rule == "mav":
        winners = multiwinner.mav_winners(profile, k, max_committees)
    else:
        raise ValueError(f"unknown rule {rule!r}; expected one of {INDUCIBLE_RULES}")
    return {extract_seats(embedding, committee) for committee in winners}
