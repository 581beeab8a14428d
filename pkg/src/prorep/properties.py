"""Representation properties, witness instances, and claim verification.

The checkers decide properties of seat distributions exactly.  The only
irrational quantity in the package is the square-root share used by the
degressive-proportionality bound; its floor is decided by interval
arithmetic at escalating precision, with exact ties resolved through
square-free decomposition (square roots of distinct square-free numbers
are linearly independent over the rationals).

``verify_claim`` drives a catalog of equivalence and implication claims
over generated instance sweeps and reports every counterexample found.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterator

from . import apportionment
from .core import (
    ApportionmentInstance,
    ApprovalProfile,
    Committee,
    EnumerationCapError,
    SeatDistribution,
    check_committee,
    check_distribution,
)
from .embedding import compositions, embed, induced_apportionment
from .sequences import DivisorSequence, WeightSequence

check_lower_quota = apportionment.satisfies_lower_quota
check_quota = apportionment.satisfies_quota


# -- square-root shares -------------------------------------------------

def _squarefree_parts(v: int) -> tuple[int, int]:
    """Write ``v = s*s * r`` with ``r`` square-free; returns ``(s, r)``."""
    s, r, rest, d = 1, 1, v, 2
    while d * d <= rest:
        count = 0
        while rest % d == 0:
            rest //= d
            count += 1
        s *= d ** (count // 2)
        if count % 2:
            r *= d
        d += 1
    return s, r * rest


def _sqrt_combination_sign(coefficients: dict[int, int]) -> int:
    """Sign of ``sum_r coefficients[r] * sqrt(r)`` over square-free ``r``.

    The sum is zero exactly when every coefficient is zero; otherwise
    integer square roots at growing precision separate it from zero.
    """
    coefficients = {r: c for r, c in coefficients.items() if c}
    if not coefficients:
        return 0
    digits = 30
    while True:
        scale = 10 ** digits
        low = high = 0
        for r, c in coefficients.items():
            approx = math.isqrt(r * scale * scale)
            if c > 0:
                low += c * approx
                high += c * (approx + 1)
            else:
                low += c * (approx + 1)
                high += c * approx
        if low > 0:
            return 1
        if high < 0:
            return -1
        digits *= 2


def penrose_lower_bounds(instance: ApportionmentInstance) -> tuple[int, ...]:
    """Floors of ``h * sqrt(v_i) / sum_l sqrt(v_l)`` for every party."""
    h = instance.seats
    parts = [_squarefree_parts(v) for v in instance.votes]

    def sign_at(i: int, c: int) -> int:
        coefficients: dict[int, int] = {}
        s_i, r_i = parts[i]
        coefficients[r_i] = h * s_i
        for s, r in parts:
            coefficients[r] = coefficients.get(r, 0) - c * s
        return _sqrt_combination_sign(coefficients)

    bounds = []
    for i in range(instance.num_parties):
        lo, hi = 0, h
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if sign_at(i, mid) >= 0:
                lo = mid
            else:
                hi = mid - 1
        bounds.append(lo)
    return tuple(bounds)


def check_penrose(instance: ApportionmentInstance, x: SeatDistribution) -> bool:
    """Whether every party reaches its square-root share floor."""
    x = check_distribution(instance, x)
    return all(s >= b for s, b in zip(x, penrose_lower_bounds(instance)))


def check_cambridge(
    instance: ApportionmentInstance, x: SeatDistribution, base: int = 5
) -> bool:
    """Whether every party gets ``base`` seats plus its proportional
    share of the remaining ``h - base*p`` seats (in floor).

    Requires ``h >= base * p``.
    """
    x = check_distribution(instance, x)
    h, p, total = instance.seats, instance.num_parties, instance.total_votes
    if h < base * p:
        raise ValueError(f"house size {h} below {base} seats per party")
    rest = h - base * p
    return all(
        s >= base and s - base >= v * rest // total
        for v, s in zip(instance.votes, x)
    )


def check_threshold(
    instance: ApportionmentInstance, x: SeatDistribution, hurdle: int
) -> bool:
    """Whether every seated party holds more than ``hurdle / h`` of the
    votes cast for seated parties.

    Requires ``1 <= hurdle < h``.
    """
    x = check_distribution(instance, x)
    h = instance.seats
    if not 1 <= hurdle < h:
        raise ValueError(f"hurdle {hurdle} outside 1..{h - 1}")
    seated_votes = sum(v for v, s in zip(instance.votes, x) if s > 0)
    return all(
        v * h > hurdle * seated_votes
        for v, s in zip(instance.votes, x)
        if s > 0
    )


# -- proportional justified representation ------------------------------

DEFAULT_PJR_VOTER_CAP = 16


def _partylist_blocks(profile: ApprovalProfile) -> list[tuple[frozenset[int], int]] | None:
    """Distinct non-empty ballots with multiplicities, if pairwise disjoint."""
    blocks: dict[frozenset[int], int] = {}
    for ballot in profile.approvals:
        if ballot:
            blocks[ballot] = blocks.get(ballot, 0) + 1
    union = frozenset().union(*blocks) if blocks else frozenset()
    if len(union) != sum(len(b) for b in blocks):
        return None
    return sorted(blocks.items(), key=lambda item: min(item[0]))


def _pjr_brute(profile: ApprovalProfile, k: int, committee: Committee) -> bool:
    n = profile.num_voters
    ballot_masks = [
        sum(1 << (c - 1) for c in ballot) for ballot in profile.approvals
    ]
    committee_mask = sum(1 << (c - 1) for c in committee)

    def has_violation(size: int, threshold: int) -> bool:
        eligible = [m for m in ballot_masks if m.bit_count() >= threshold]

        def rec(start: int, left: int, common: int, union: int) -> bool:
            if common.bit_count() < threshold:
                return False
            if left == 0:
                return (union & committee_mask).bit_count() < threshold
            for i in range(start, len(eligible) - left + 1):
                if rec(i + 1, left - 1, common & eligible[i], union | eligible[i]):
                    return True
            return False

        return size <= len(eligible) and rec(0, size, (1 << profile.num_candidates) - 1, 0)

    for group_seats in range(1, k + 1):
        group_size = -((-group_seats * n) // k)
        if group_size <= n and has_violation(group_size, group_seats):
            return False
    return True


def check_pjr(
    profile: ApprovalProfile,
    k: int,
    committee: Committee,
    method: str = "auto",
    voter_cap: int = DEFAULT_PJR_VOTER_CAP,
) -> bool:
    """Whether ``committee`` gives proportional justified representation.

    No group of at least ``l * n / k`` voters jointly approving ``l``
    or more common candidates may end up with fewer than ``l`` committee
    members among its united approvals.

    A profile whose distinct ballots are pairwise disjoint is decided
    blockwise in closed form (a violating group can only draw on one
    ballot block); any other profile is brute-forced, which is only
    permitted up to ``voter_cap`` voters.  ``method`` forces a specific
    path (``"party-list"`` or ``"brute"``).
    """
    committee = check_committee(profile, committee, size=k)
    blocks = _partylist_blocks(profile)
    if method not in ("auto", "party-list", "brute"):
        raise ValueError(f"unknown method {method!r}")
    if method == "party-list" or (method == "auto" and blocks is not None):
        if blocks is None:
            raise ValueError("profile is not a party-list profile")
        n = profile.num_voters
        return all(
            len(ballot & committee) >= min(len(ballot), count * k // n)
            for ballot, count in blocks
        )
    if profile.num_voters > voter_cap:
        raise EnumerationCapError(
            f"brute-force justified-representation check limited to {voter_cap} voters"
        )
    return _pjr_brute(profile, k, committee)


# -- witness instances ---------------------------------------------------

def uniqueness_witness(
    weights: WeightSequence, rank: int, size: int
) -> tuple[ApportionmentInstance, SeatDistribution] | None:
    """Search two crafted races for a quota-floor violation of ``weights``.

    The races make one party's quota floor bind sharply against the
    weight at position ``rank``; harmonic weights pass both, any other
    weight at that rank fails one of them.  Returns the first violating
    ``(instance, distribution)`` in canonical order, or ``None``.
    """
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if size < 2:
        raise ValueError("size must be >= 2")
    races = (
        ApportionmentInstance((size,) + (rank * size - 1,) * size, rank * size),
        ApportionmentInstance((rank * size,) + (size - 1,) * size, size + rank - 1),
    )
    for instance in races:
        for x in sorted(induced_apportionment("owa", instance, weights)):
            if not check_lower_quota(instance, x):
                return instance, x
    return None


# -- sweeps and claims ---------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    """Instance generation settings for claim verification.

    ``mode`` is ``"exhaustive"`` (full grid over party counts, vote
    vectors, and house sizes) or ``"random"`` (seeded uniform draws).
    """

    min_parties: int = 2
    max_parties: int = 3
    max_votes: int = 10
    max_seats: int = 5
    mode: str = "exhaustive"
    trials: int = 500
    seed: int | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.min_parties <= self.max_parties:
            raise ValueError("party bounds must satisfy 1 <= min <= max")
        if self.max_votes < 1 or self.max_seats < 1:
            raise ValueError("vote and seat bounds must be positive")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "random" and self.seed is None:
            raise ValueError("random mode requires a seed")
        if self.mode == "random" and self.trials < 1:
            raise ValueError("random mode requires a positive trial count")


def generate_instances(config: SweepConfig) -> Iterator[ApportionmentInstance]:
    """Deterministic stream of instances described by ``config``."""
    if config.mode == "exhaustive":
        for p in range(config.min_parties, config.max_parties + 1):
            for votes in product(range(1, config.max_votes + 1), repeat=p):
                for h in range(1, config.max_seats + 1):
                    yield ApportionmentInstance(votes, h)
    else:
        rng = random.Random(config.seed)
        for _ in range(config.trials):
            p = rng.randint(config.min_parties, config.max_parties)
            votes = tuple(rng.randint(1, config.max_votes) for _ in range(p))
            h = rng.randint(1, config.max_seats)
            yield ApportionmentInstance(votes, h)


@dataclass(frozen=True)
class ClaimFailure:
    instance: ApportionmentInstance
    detail: str


@dataclass
class VerificationReport:
    claim: str
    instances_tested: int = 0
    failures: list[ClaimFailure] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures


_SKIP = object()


def _render(outcomes: set[SeatDistribution]) -> str:
    return "{" + ", ".join(str(list(x)) for x in sorted(outcomes)) + "}"


def _equality(left_label: str, left: set, right_label: str, right: set) -> str | None:
    if left == right:
        return None
    return f"{left_label} gives {_render(left)} but {right_label} gives {_render(right)}"


def _expected_plurality(instance: ApportionmentInstance) -> set[SeatDistribution]:
    """Every distribution whose seats all sit on highest-vote parties."""
    top = max(instance.votes)
    leaders = [i for i, v in enumerate(instance.votes) if v == top]
    outcomes: set[SeatDistribution] = set()
    for split in compositions(instance.seats, len(leaders)):
        x = [0] * instance.num_parties
        for i, seats in zip(leaders, split):
            x[i] = seats
        outcomes.add(tuple(x))
    return outcomes


def _expected_one_each(instance: ApportionmentInstance) -> set[SeatDistribution]:
    """One seat to each of the ``h`` highest-vote parties, ties enumerated."""
    h = instance.seats
    cutoff = sorted(instance.votes, reverse=True)[h - 1]
    base = [1 if v > cutoff else 0 for v in instance.votes]
    tied = [i for i, v in enumerate(instance.votes) if v == cutoff]
    need = h - sum(base)
    outcomes: set[SeatDistribution] = set()
    for chosen in combinations(tied, need):
        x = list(base)
        for i in chosen:
            x[i] = 1
        outcomes.add(tuple(x))
    return outcomes


def _make_claim(
    claim: str,
    weights: WeightSequence | None,
    hurdle: int,
    pjr_brute_votes: int,
) -> Callable[[ApportionmentInstance], str | None | object]:
    pav = WeightSequence.pav()

    if claim == "seq-equiv":
        ws = weights if weights is not None else pav

        def fn(instance):
            return _equality(
                "optimal rule",
                induced_apportionment("owa", instance, ws),
                "sequential rule",
                induced_apportionment("seq-owa", instance, ws),
            )

    elif claim == "owa-divisor":
        ws = weights if weights is not None else pav
        divisors = DivisorSequence.from_weights(ws)

        def fn(instance):
            if not (ws.is_nonincreasing(instance.seats + 1) and ws.is_positive(instance.seats + 1)):
                raise ValueError(
                    f"claim owa-divisor needs non-increasing positive weights, got {ws.label}"
                )
            return _equality(
                "induced rule",
                induced_apportionment("owa", instance, ws),
                "divisor method",
                apportionment.divisor_apportion(instance, divisors),
            )

    elif claim == "pav-dhondt":
        dhondt = DivisorSequence.dhondt()

        def fn(instance):
            return _equality(
                "induced rule",
                induced_apportionment("owa", instance, pav),
                "highest averages 1,2,3,...",
                apportionment.divisor_apportion(instance, dhondt),
            )

    elif claim == "maxphrag-dhondt":
        dhondt = DivisorSequence.dhondt()

        def fn(instance):
            return _equality(
                "induced rule",
                induced_apportionment("max-phragmen", instance),
                "highest averages 1,2,3,...",
                apportionment.divisor_apportion(instance, dhondt),
            )

    elif claim == "monroe-lr":

        def fn(instance):
            if instance.total_votes % instance.seats != 0:
                return _SKIP
            return _equality(
                "induced rule",
                induced_apportionment("monroe", instance),
                "largest remainder",
                apportionment.largest_remainder(instance),
            )

    elif claim == "varphrag-sl":
        sl = DivisorSequence.sainte_lague()

        def fn(instance):
            return _equality(
                "induced rule",
                induced_apportionment("var-phragmen", instance),
                "highest averages 1,3,5,...",
                apportionment.divisor_apportion(instance, sl),
            )

    elif claim == "harmonicodd-sl":
        sl = DivisorSequence.sainte_lague()
        odd = WeightSequence.harmonic_odd()

        def fn(instance):
            return _equality(
                "induced rule",
                induced_apportionment("owa", instance, odd),
                "highest averages 1,3,5,...",
                apportionment.divisor_apportion(instance, sl),
            )

    elif claim == "cc-largest":
        cc = WeightSequence.chamberlin_courant()

        def fn(instance):
            if instance.num_parties <= instance.seats:
                return _SKIP
            return _equality(
                "induced rule",
                induced_apportionment("owa", instance, cc),
                "one seat per largest party",
                _expected_one_each(instance),
            )

    elif claim == "topk-plurality":
        topk = WeightSequence.top_k()

        def fn(instance):
            return _equality(
                "induced rule",
                induced_apportionment("owa", instance, topk),
                "all seats to the top party",
                _expected_plurality(instance),
            )

    elif claim == "sav-topk":
        topk = WeightSequence.top_k()

        def fn(instance):
            return _equality(
                "share scoring",
                induced_apportionment("sav", instance),
                "approval counting",
                induced_apportionment("owa", instance, topk),
            )

    elif claim == "dhondt-lowerquota":
        dhondt = DivisorSequence.dhondt()

        def fn(instance):
            for x in sorted(apportionment.divisor_apportion(instance, dhondt)):
                if not check_lower_quota(instance, x):
                    return f"outcome {list(x)} breaks a quota floor"
            return None

    elif claim == "lr-quota":

        def fn(instance):
            for x in sorted(apportionment.largest_remainder(instance)):
                if not check_quota(instance, x):
                    return f"outcome {list(x)} leaves the quota interval"
            return None

    elif claim == "penrose":
        penrose = WeightSequence.penrose()

        def fn(instance):
            for x in sorted(induced_apportionment("owa", instance, penrose)):
                if not check_penrose(instance, x):
                    return f"outcome {list(x)} breaks a square-root share floor"
            return None

    elif claim == "cambridge":

        def fn(instance):
            if instance.seats < 5 * instance.num_parties:
                return _SKIP
            ws = WeightSequence.affine(5 * instance.total_votes + 1)
            for x in sorted(induced_apportionment("owa", instance, ws)):
                if not check_cambridge(instance, x):
                    return f"outcome {list(x)} breaks the base-plus-share bound"
            return None

    elif claim == "threshold":

        def fn(instance):
            if not 1 <= hurdle < instance.seats:
                return _SKIP
            ws = WeightSequence.truncated(pav, hurdle)
            for x in sorted(induced_apportionment("owa", instance, ws)):
                if not check_threshold(instance, x, hurdle):
                    return f"outcome {list(x)} seats a party below the hurdle"
            return None

    elif claim == "pjr-implies-lowerquota":

        def fn(instance):
            profile, k, embedding = embed(instance)
            brute = instance.total_votes <= pjr_brute_votes
            for x in compositions(instance.seats, instance.num_parties):
                committee = frozenset().union(
                    *(
                        sorted(block)[:seats]
                        for block, seats in zip(embedding.candidate_blocks, x)
                    )
                )
                pjr = check_pjr(profile, k, committee)
                if brute and pjr != check_pjr(profile, k, committee, method="brute"):
                    return f"blockwise and brute-force checks disagree on {list(x)}"
                if pjr != check_lower_quota(instance, x):
                    return f"representation and quota-floor checks disagree on {list(x)}"
            return None

    else:
        raise ValueError(f"unknown claim {claim!r}")

    return fn


CLAIM_IDS = (
    "seq-equiv",
    "owa-divisor",
    "pav-dhondt",
    "maxphrag-dhondt",
    "monroe-lr",
    "varphrag-sl",
    "harmonicodd-sl",
    "cc-largest",
    "topk-plurality",
    "sav-topk",
    "dhondt-lowerquota",
    "lr-quota",
    "penrose",
    "cambridge",
    "threshold",
    "pjr-implies-lowerquota",
)


def verify_claim(
    claim: str,
    config: SweepConfig,
    weights: WeightSequence | None = None,
    hurdle: int = 1,
    pjr_brute_votes: int = 9,
    max_failures: int = 20,
) -> VerificationReport:
    """Check ``claim`` on every instance of the sweep.

    ``weights`` parameterizes the claims about weight families
    (``seq-equiv``, ``owa-divisor``); ``hurdle`` parameterizes
    ``threshold``.  Instances a claim does not apply to are skipped and
    not counted.  Collects at most ``max_failures`` counterexamples.
    """
    fn = _make_claim(claim, weights, hurdle, pjr_brute_votes)
    report = VerificationReport(claim=claim)
    start = time.perf_counter()
    for instance in generate_instances(config):
        result = fn(instance)
        if result is _SKIP:
            continue
        report.instances_tested += 1
        if result is not None:
            report.failures.append(ClaimFailure(instance, result))
            if len(report.failures) >= max_failures:
                break
    report.elapsed_seconds = time.perf_counter() - start
    return report
