"""Core data types shared by the apportionment and committee-election code.

All quantities that can be fractional are represented as
:class:`fractions.Fraction`; rule logic never touches floating point, so
ties are detected exactly and outcome sets are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

#: A seat distribution: one non-negative seat count per party, summing to
#: the house size.  Party ``i`` (1-based in all user-facing output) owns
#: entry ``i - 1``.
SeatDistribution = tuple[int, ...]

#: A committee: a set of 1-based candidate identifiers.
Committee = frozenset[int]


class ElectionError(Exception):
    """Base class for domain errors raised by rules and methods."""


class TieExplosionError(ElectionError):
    """Raised when a tie-completion enumeration would exceed its cap."""


class EnumerationCapError(ElectionError):
    """Raised when a brute-force enumeration would exceed its cap."""


class DivisibilityError(ElectionError):
    """Raised when a rule requires the committee size to divide the
    number of voters and it does not."""


class InfeasibleCommitteeError(ElectionError):
    """Raised when no load distribution exists for a committee (some
    member is approved by nobody), or no feasible committee exists."""


@dataclass(frozen=True)
class ApportionmentInstance:
    """A vote distribution over parties and a number of seats to fill.

    ``votes[i]`` is the (positive) number of voters of party ``i + 1``;
    ``seats`` is the positive house size.
    """

    votes: tuple[int, ...]
    seats: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "votes", tuple(int(v) for v in self.votes))
        if not self.votes:
            raise ValueError("at least one party is required")
        if any(v <= 0 for v in self.votes):
            raise ValueError("all vote counts must be positive")
        if self.seats <= 0:
            raise ValueError("the number of seats must be positive")

    @property
    def num_parties(self) -> int:
        return len(self.votes)

    @property
    def total_votes(self) -> int:
        return sum(self.votes)

    def quota(self, party: int) -> Fraction:
        """Exact proportional share of seats for 1-based ``party``."""
        return Fraction(self.votes[party - 1] * self.seats, self.total_votes)


def check_distribution(instance: ApportionmentInstance, x: SeatDistribution) -> tuple[int, ...]:
    """Validate ``x`` against ``instance`` and return it as a tuple.

    Raises ``ValueError`` on wrong length, negative entries, or a seat
    total different from the house size.
    """
    x = tuple(int(s) for s in x)
    if len(x) != instance.num_parties:
        raise ValueError(
            f"seat distribution has {len(x)} entries for {instance.num_parties} parties"
        )
    if any(s < 0 for s in x):
        raise ValueError("seat counts must be non-negative")
    if sum(x) != instance.seats:
        raise ValueError(f"seat counts sum to {sum(x)}, expected {instance.seats}")
    return x


@dataclass(frozen=True)
class ApprovalProfile:
    """Approval ballots of ``n`` voters over candidates ``1..m``.

    ``approvals[i]`` is the (possibly empty) set of candidates approved
    by voter ``i + 1``.  Candidate identifiers are 1-based.
    """

    num_candidates: int
    approvals: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "approvals", tuple(frozenset(ballot) for ballot in self.approvals)
        )
        if self.num_candidates < 1:
            raise ValueError("at least one candidate is required")
        if not self.approvals:
            raise ValueError("at least one voter is required")
        for ballot in self.approvals:
            for c in ballot:
                if not 1 <= c <= self.num_candidates:
                    raise ValueError(f"candidate id {c} outside 1..{self.num_candidates}")

    @property
    def num_voters(self) -> int:
        return len(self.approvals)

    def approvers(self, candidate: int) -> frozenset[int]:
        """1-based ids of the voters approving ``candidate``."""
        return frozenset(
            i + 1 for i, ballot in enumerate(self.approvals) if candidate in ballot
        )


def check_committee(profile: ApprovalProfile, committee: Committee, size: int | None = None) -> Committee:
    """Validate a candidate subset against ``profile`` (and ``size`` if given)."""
    committee = frozenset(int(c) for c in committee)
    for c in committee:
        if not 1 <= c <= profile.num_candidates:
            raise ValueError(f"candidate id {c} outside 1..{profile.num_candidates}")
    if size is not None and len(committee) != size:
        raise ValueError(f"committee has {len(committee)} members, expected {size}")
    return committee
