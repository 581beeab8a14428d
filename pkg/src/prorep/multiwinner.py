"""Approval-based committee election rules.

Winner determination is exhaustive over all size-``k`` committees, with
a hard cap on the enumeration size; scores are exact rationals so tied
committees are recognized reliably.  The load-balancing rules avoid an
LP solver: the minimal achievable maximum voter load of a committee
equals the largest ratio ``|B| / |supporters(B)|`` over candidate
subsets ``B``, and the most balanced load vector falls out of peeling
off the maximizing subsets one level at a time.
"""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .core import (
    ApprovalProfile,
    Committee,
    DivisibilityError,
    EnumerationCapError,
    InfeasibleCommitteeError,
    check_committee,
)
from .sequences import WeightSequence

DEFAULT_MAX_COMMITTEES = 2_000_000


def _committees(candidates: Sequence[int], k: int, cap: int) -> Iterator[Committee]:
    if math.comb(len(candidates), k) > cap:
        raise EnumerationCapError(
            f"enumerating {math.comb(len(candidates), k)} committees exceeds the cap of {cap}"
        )
    for combo in combinations(sorted(candidates), k):
        yield frozenset(combo)


def _check_k(profile: ApprovalProfile, k: int) -> None:
    if not 1 <= k <= profile.num_candidates:
        raise ValueError(f"committee size {k} outside 1..{profile.num_candidates}")


def owa_satisfaction(
    profile: ApprovalProfile, committee: Committee, weights: WeightSequence
) -> Fraction:
    """Total voter satisfaction: each voter sums the first
    ``|ballot ∩ committee|`` weights."""
    committee = check_committee(profile, committee)
    return sum(
        (weights.satisfaction(len(ballot & committee)) for ballot in profile.approvals),
        Fraction(0),
    )


def owa_winners(
    profile: ApprovalProfile,
    k: int,
    weights: WeightSequence,
    max_committees: int = DEFAULT_MAX_COMMITTEES,
) -> set[Committee]:
    """All size-``k`` committees maximizing total satisfaction."""
    _check_k(profile, k)
    best: Fraction | None = None
    winners: set[Committee] = set()
    for committee in _committees(range(1, profile.num_candidates + 1), k, max_committees):
        score = owa_satisfaction(profile, committee, weights)
        if best is None or score > best:
            best, winners = score, {committee}
        elif score == best:
            winners.add(committee)
    return winners


def seq_owa_winners(
    profile: ApprovalProfile,
    k: int,
    weights: WeightSequence,
    max_committees: int = DEFAULT_MAX_COMMITTEES,
) -> set[Committee]:
    """All committees reachable by the greedy procedure under every
    tie-resolution.

    In each of ``k`` rounds the candidate with the largest marginal
    contribution joins the committee; all tied argmax branches are
    explored and the reachable committees are deduplicated as sets.
    """
    _check_k(profile, k)
    frontier: set[Committee] = {frozenset()}
    for _ in range(k):
        next_frontier: set[Committee] = set()
        for committee in frontier:
            counts = [len(ballot & committee) for ballot in profile.approvals]
            marginal: dict[int, Fraction] = {}
            for c in range(1, profile.num_candidates + 1):
                if c in committee:
                    continue
                marginal[c] = sum(
                    (
                        weights.weight_at(count + 1)
                        for ballot, count in zip(profile.approvals, counts)
                        if c in ballot
                    ),
                    Fraction(0),
                )
            best = max(marginal.values())
            next_frontier.update(
                committee | {c} for c, gain in marginal.items() if gain == best
            )
            if len(next_frontier) > max_committees:
                raise EnumerationCapError(
                    f"greedy tie exploration exceeds the cap of {max_committees}"
                )
        frontier = next_frontier
    return frontier


def monroe_satisfaction(profile: ApprovalProfile, committee: Committee) -> int:
    """Most voters that a balanced allocation can match to an approved
    committee member.

    Each member represents exactly ``n / k`` voters; the maximum number
    of represented voters who approve their representative is an integer
    matching problem solved by augmenting paths.
    """
    committee = check_committee(profile, committee)
    n, k = profile.num_voters, len(committee)
    if k == 0 or n % k != 0:
        raise DivisibilityError(
            f"committee size {k} must divide the number of voters {n}"
        )
    capacity = n // k
    members = sorted(committee)
    assigned: dict[int, list[int]] = {c: [] for c in members}
    adjacency = [sorted(ballot & committee) for ballot in profile.approvals]

    def augment(voter: int, visited: set[int]) -> bool:
        for c in adjacency[voter]:
            if c in visited:
                continue
            visited.add(c)
            if len(assigned[c]) < capacity:
                assigned[c].append(voter)
                return True
            for other in assigned[c]:
                if augment(other, visited):
                    assigned[c].remove(other)
                    assigned[c].append(voter)
                    return True
        return False

    matched = 0
    for voter in range(n):
        if augment(voter, set()):
            matched += 1
    return matched


def monroe_winners(
    profile: ApprovalProfile, k: int, max_committees: int = DEFAULT_MAX_COMMITTEES
) -> set[Committee]:
    """All size-``k`` committees with maximal balanced-allocation score."""
    _check_k(profile, k)
    if profile.num_voters % k != 0:
        raise DivisibilityError(
            f"committee size {k} must divide the number of voters {profile.num_voters}"
        )
    best: int | None = None
    winners: set[Committee] = set()
    for committee in _committees(range(1, profile.num_candidates + 1), k, max_committees):
        score = monroe_satisfaction(profile, committee)
        if best is None or score > best:
            best, winners = score, {committee}
        elif score == best:
            winners.add(committee)
    return winners


def validate_load(
    profile: ApprovalProfile, k: int, loads: Sequence[Sequence[Fraction]]
) -> bool:
    """Whether ``loads`` is a valid load distribution for committee size ``k``.

    Requires an ``n x m`` matrix of non-negative rationals whose total is
    ``k``, whose column sums are all 0 or 1, and whose support stays
    within the voters' ballots.
    """
    n, m = profile.num_voters, profile.num_candidates
    if len(loads) != n or any(len(row) != m for row in loads):
        raise ValueError(f"load matrix must be {n}x{m}")
    matrix = [[Fraction(cell) for cell in row] for row in loads]
    if any(cell < 0 for row in matrix for cell in row):
        return False
    if sum(cell for row in matrix for cell in row) != k:
        return False
    for c in range(1, m + 1):
        if sum(row[c - 1] for row in matrix) not in (0, 1):
            return False
    for ballot, row in zip(profile.approvals, matrix):
        if any(cell != 0 for c, cell in enumerate(row, start=1) if c not in ballot):
            return False
    return True


def _approver_masks(profile: ApprovalProfile, committee: Iterable[int]) -> dict[int, int]:
    masks: dict[int, int] = {}
    for c in committee:
        mask = 0
        for i, ballot in enumerate(profile.approvals):
            if c in ballot:
                mask |= 1 << i
        masks[c] = mask
    return masks


def _subset_supports(members: Sequence[int], masks: dict[int, int]) -> Iterator[tuple[int, int]]:
    """Yield ``(candidate subset bitmask, supporter voter bitmask)``."""
    supports = [0] * (1 << len(members))
    for subset in range(1, 1 << len(members)):
        low = subset & -subset
        supports[subset] = supports[subset ^ low] | masks[members[low.bit_length() - 1]]
        yield subset, supports[subset]


def min_max_load(profile: ApprovalProfile, committee: Committee) -> Fraction:
    """The smallest achievable maximum voter load for ``committee``.

    Equals the largest ratio ``|B| / |supporters(B)|`` over non-empty
    subsets ``B`` of the committee: the supporters of ``B`` must absorb
    ``|B|`` units of load between them, and spreading each level of the
    support structure evenly shows the bound is attained.
    """
    committee = check_committee(profile, committee)
    members = sorted(committee)
    masks = _approver_masks(profile, members)
    if any(mask == 0 for mask in masks.values()):
        raise InfeasibleCommitteeError("a committee member is approved by nobody")
    best = Fraction(0)
    for subset, support in _subset_supports(members, masks):
        ratio = Fraction(subset.bit_count(), support.bit_count())
        if ratio > best:
            best = ratio
    return best


def _peel_blocks(
    profile: ApprovalProfile, committee: Committee
) -> list[tuple[list[int], int, Fraction]]:
    """Decompose a committee into load levels.

    Repeatedly take the inclusion-maximal candidate subset maximizing
    ``|B| / |supporters(B)|`` among the remaining voters, record it with
    its supporters and ratio, and remove both.  Ratios strictly decrease
    from level to level, and the maximal maximizer is unique because
    maximizers are closed under union.
    """
    committee = check_committee(profile, committee)
    members = sorted(committee)
    masks = _approver_masks(profile, members)
    if any(mask == 0 for mask in masks.values()):
        raise InfeasibleCommitteeError("a committee member is approved by nobody")
    remaining = members
    active = (1 << profile.num_voters) - 1
    blocks: list[tuple[list[int], int, Fraction]] = []
    while remaining:
        best_ratio: Fraction | None = None
        best_subsets: list[tuple[int, int]] = []
        for subset, support in _subset_supports(remaining, masks):
            support &= active
            ratio = Fraction(subset.bit_count(), support.bit_count())
            if best_ratio is None or ratio > best_ratio:
                best_ratio, best_subsets = ratio, [(subset, support)]
            elif ratio == best_ratio:
                best_subsets.append((subset, support))
        # Maximizers are closed under union, so the largest one is unique.
        sizes = sorted(pair[0].bit_count() for pair in best_subsets)
        assert len(sizes) < 2 or sizes[-1] > sizes[-2]
        subset, support = max(best_subsets, key=lambda pair: pair[0].bit_count())
        block = [remaining[i] for i in range(len(remaining)) if subset >> i & 1]
        blocks.append((block, support, best_ratio))
        remaining = [c for i, c in enumerate(remaining) if not subset >> i & 1]
        active &= ~support
    return blocks


def balanced_loads(profile: ApprovalProfile, committee: Committee) -> tuple[Fraction, ...]:
    """The unique voter-load vector minimizing the sum of squared loads.

    Every supporter of a level carries exactly that level's ratio; voters
    supporting no committee member carry nothing.
    """
    loads = [Fraction(0)] * profile.num_voters
    for _, support, ratio in _peel_blocks(profile, committee):
        for i in range(profile.num_voters):
            if support >> i & 1:
                loads[i] = ratio
    return tuple(loads)


def _max_flow(
    num_nodes: int, edges: list[tuple[int, int, Fraction]], source: int, sink: int
) -> list[Fraction]:
    """Edmonds-Karp max flow with rational capacities; returns per-edge flow."""
    graph: list[list[int]] = [[] for _ in range(num_nodes)]
    cap: list[Fraction] = []
    to: list[int] = []
    for u, v, c in edges:
        graph[u].append(len(cap)); to.append(v); cap.append(Fraction(c))
        graph[v].append(len(cap)); to.append(u); cap.append(Fraction(0))
    flow = [Fraction(0)] * len(cap)
    while True:
        parent_edge = [-1] * num_nodes
        parent_edge[source] = -2
        queue = deque([source])
        while queue and parent_edge[sink] == -1:
            u = queue.popleft()
            for e in graph[u]:
                if parent_edge[to[e]] == -1 and cap[e] - flow[e] > 0:
                    parent_edge[to[e]] = e
                    queue.append(to[e])
        if parent_edge[sink] == -1:
            break
        bottleneck: Fraction | None = None
        v = sink
        while v != source:
            e = parent_edge[v]
            residual = cap[e] - flow[e]
            bottleneck = residual if bottleneck is None else min(bottleneck, residual)
            v = to[e ^ 1]
        v = sink
        while v != source:
            e = parent_edge[v]
            flow[e] += bottleneck
            flow[e ^ 1] -= bottleneck
            v = to[e ^ 1]
    return flow


def balanced_load_matrix(
    profile: ApprovalProfile, committee: Committee
) -> tuple[tuple[Fraction, ...], ...]:
    """A load distribution realizing :func:`balanced_loads`.

    Within each level, the one unit of load per member is spread over
    that level's supporters by a flow so that every supporter carries
    exactly the level ratio.
    """
    n = profile.num_voters
    matrix = [[Fraction(0)] * profile.num_candidates for _ in range(n)]
    for block, support, ratio in _peel_blocks(profile, committee):
        voters = [i for i in range(n) if support >> i & 1]
        index = {c: 1 + j for j, c in enumerate(block)}
        offset = 1 + len(block)
        node_count = offset + len(voters) + 1
        sink = node_count - 1
        edges: list[tuple[int, int, Fraction]] = []
        for c in block:
            edges.append((0, index[c], Fraction(1)))
        for j, i in enumerate(voters):
            for c in block:
                if c in profile.approvals[i]:
                    edges.append((index[c], offset + j, Fraction(1)))
            edges.append((offset + j, sink, ratio))
        flow = _max_flow(node_count, edges, 0, sink)
        for e, (u, v, _) in enumerate(edges):
            if 1 <= u < offset and offset <= v < sink:
                matrix[voters[v - offset]][block[u - 1] - 1] += flow[2 * e]
    return tuple(tuple(row) for row in matrix)


def _feasible_committees(
    profile: ApprovalProfile, k: int, cap: int
) -> Iterator[Committee]:
    approved = [
        c
        for c in range(1, profile.num_candidates + 1)
        if any(c in ballot for ballot in profile.approvals)
    ]
    if len(approved) < k:
        raise InfeasibleCommitteeError(
            f"only {len(approved)} candidates are approved; no committee of size {k} is feasible"
        )
    yield from _committees(approved, k, cap)


def max_phragmen_winners(
    profile: ApprovalProfile, k: int, max_committees: int = DEFAULT_MAX_COMMITTEES
) -> set[Committee]:
    """All feasible size-``k`` committees minimizing the maximum voter load."""
    _check_k(profile, k)
    best: Fraction | None = None
    winners: set[Committee] = set()
    for committee in _feasible_committees(profile, k, max_committees):
        load = min_max_load(profile, committee)
        if best is None or load < best:
            best, winners = load, {committee}
        elif load == best:
            winners.add(committee)
    return winners


def var_phragmen_winners(
    profile: ApprovalProfile, k: int, max_committees: int = DEFAULT_MAX_COMMITTEES
) -> set[Committee]:
    """All feasible size-``k`` committees minimizing the sum of squared
    voter loads."""
    _check_k(profile, k)
    best: Fraction | None = None
    winners: set[Committee] = set()
    for committee in _feasible_committees(profile, k, max_committees):
        score = sum(load * load for load in balanced_loads(profile, committee))
        if best is None or score < best:
            best, winners = score, {committee}
        elif score == best:
            winners.add(committee)
    return winners


def sav_score(profile: ApprovalProfile, committee: Committee) -> Fraction:
    """Satisfaction-approval score: each voter contributes the approved
    fraction of their ballot; empty ballots contribute nothing."""
    committee = check_committee(profile, committee)
    return sum(
        (
            Fraction(len(ballot & committee), len(ballot))
            for ballot in profile.approvals
            if ballot
        ),
        Fraction(0),
    )


def sav_winners(
    profile: ApprovalProfile, k: int, max_committees: int = DEFAULT_MAX_COMMITTEES
) -> set[Committee]:
    """All size-``k`` committees maximizing the satisfaction-approval score."""
    _check_k(profile, k)
    best: Fraction | None = None
    winners: set[Committee] = set()
    for committee in _committees(range(1, profile.num_candidates + 1), k, max_committees):
        score = sav_score(profile, committee)
        if best is None or score > best:
            best, winners = score, {committee}
        elif score == best:
            winners.add(committee)
    return winners


def mav_score(profile: ApprovalProfile, committee: Committee) -> int:
    """Minimax-approval score: the largest Hamming distance between the
    committee and any ballot."""
    committee = check_committee(profile, committee)
    return max(len(ballot ^ committee) for ballot in profile.approvals)


def mav_winners(
    profile: ApprovalProfile, k: int, max_committees: int = DEFAULT_MAX_COMMITTEES
) -> set[Committee]:
    """All size-``k`` committees minimizing the maximum Hamming distance."""
    _check_k(profile, k)
    best: int | None = None
    winners: set[Committee] = set()
    for committee in _committees(range(1, profile.num_candidates + 1), k, max_committees):
        score = mav_score(profile, committee)
        if best is None or score < best:
            best, winners = score, {committee}
        elif score == best:
            winners.add(committee)
    return winners
