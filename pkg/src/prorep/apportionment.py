"""Classical apportionment methods with complete tie-set semantics.

Both methods return the *full* set of tied seat distributions instead of
breaking ties, because downstream equivalence checks are set-equality
statements.  Tie completions are enumerated up to a configurable cap.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from .core import ApportionmentInstance, SeatDistribution, TieExplosionError, check_distribution
from .sequences import DivisorSequence, claim_key

DEFAULT_MAX_OUTCOMES = 10_000


def move_seat(x: SeatDistribution, frm: int, to: int) -> SeatDistribution:
    """Move one seat from 1-based party ``frm`` to party ``to``."""
    if frm == to:
        raise ValueError("cannot move a seat from a party to itself")
    if not 1 <= frm <= len(x) or not 1 <= to <= len(x):
        raise ValueError("party index out of range")
    if x[frm - 1] <= 0:
        raise ValueError(f"party {frm} has no seat to move")
    moved = list(x)
    moved[frm - 1] -= 1
    moved[to - 1] += 1
    return tuple(moved)


def _tie_completions(
    base: list[int], tied: list[int], need: int, max_outcomes: int
) -> set[SeatDistribution]:
    """All ways of adding ``need`` seats, at most ``tied[i]`` to party ``i``."""
    outcomes: set[SeatDistribution] = set()
    p = len(base)

    def rec(i: int, left: int, extra: list[int]) -> None:
        if left == 0:
            outcomes.add(tuple(b + e for b, e in zip(base, extra)))
            if len(outcomes) > max_outcomes:
                raise TieExplosionError(
                    f"tie completion would produce more than {max_outcomes} outcomes"
                )
            return
        if i == p or left > sum(tied[i:]):
            return
        for take in range(min(tied[i], left) + 1):
            extra[i] = take
            rec(i + 1, left - take, extra)
        extra[i] = 0

    rec(0, need, [0] * p)
    return outcomes


def divisor_apportion(
    instance: ApportionmentInstance,
    divisors: DivisorSequence,
    max_outcomes: int = DEFAULT_MAX_OUTCOMES,
) -> set[SeatDistribution]:
    """All seat distributions the highest-averages procedure can reach.

    For each party the claims ``votes / d(0), ..., votes / d(h - 1)`` are
    formed; the ``h`` largest claims overall are awarded.  Because the
    divisor sequence is non-decreasing, each party's claims are awarded
    oldest-first, so the batch selection matches the iterative procedure.
    All completions among claims tied at the cutoff are enumerated.
    """
    h = instance.seats
    divisors.validate(h - 1)
    keys = [
        [claim_key(v, divisors.divisor_at(s)) for s in range(h)] for v in instance.votes
    ]
    cutoff = sorted((key for row in keys for key in row), reverse=True)[h - 1]
    above = [sum(1 for key in row if key > cutoff) for row in keys]
    tied = [sum(1 for key in row if key == cutoff) for row in keys]
    need = h - sum(above)
    return _tie_completions(above, tied, need, max_outcomes)


def largest_remainder(
    instance: ApportionmentInstance, max_outcomes: int = DEFAULT_MAX_OUTCOMES
) -> set[SeatDistribution]:
    """All seat distributions of the largest-remainder method.

    Each party first receives the floor of its exact quota; leftover
    seats go one apiece to the parties with the largest fractional
    remainders, enumerating every completion among tied remainders.
    """
    h, total = instance.seats, instance.total_votes
    floors = [v * h // total for v in instance.votes]
    remainders = [Fraction(v * h % total, total) for v in instance.votes]
    left = h - sum(floors)
    if left == 0:
        return {tuple(floors)}
    cutoff = sorted(remainders, reverse=True)[left - 1]
    base = [
        f + 1 if r > cutoff else f for f, r in zip(floors, remainders)
    ]
    tied = [i for i, r in enumerate(remainders) if r == cutoff]
    need = left - sum(1 for r in remainders if r > cutoff)
    if math.comb(len(tied), need) > max_outcomes:
        raise TieExplosionError(
            f"tie completion would produce more than {max_outcomes} outcomes"
        )
    outcomes: set[SeatDistribution] = set()
    for chosen in combinations(tied, need):
        x = list(base)
        for i in chosen:
            x[i] += 1
        outcomes.add(tuple(x))
    return outcomes


def satisfies_lower_quota(instance: ApportionmentInstance, x: SeatDistribution) -> bool:
    """Whether every party receives at least the floor of its quota."""
    x = check_distribution(instance, x)
    h, total = instance.seats, instance.total_votes
    return all(s >= v * h // total for v, s in zip(instance.votes, x))


def satisfies_quota(instance: ApportionmentInstance, x: SeatDistribution) -> bool:
    """Whether every party's seats lie between quota floor and ceiling."""
    x = check_distribution(instance, x)
    h, total = instance.seats, instance.total_votes
    for v, s in zip(instance.votes, x):
        if not v * h // total <= s <= -((-v * h) // total):
            return False
    return True
