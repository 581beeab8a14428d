import pytest

from prorep import ApprovalProfile

# 12 voters, 6 candidates: a profile on which the committee rules in this
# package all pick different winners, used as a shared reference scenario.
TWELVE_VOTER_BALLOTS = (
    {1},
    {1, 3, 5},
    {1, 5, 6},
    {1, 5, 6},
    {1, 4, 5, 6},
    {1, 4, 5, 6},
    {1, 4},
    {2, 4, 6},
    {2},
    {3, 5},
    {3},
    {3},
)

# 5 voters, 4 candidates: minimizing the largest voter load and minimizing
# the sum of squared loads pick different committees here.
FIVE_VOTER_BALLOTS = (
    {1},
    {2},
    {2, 3},
    {1, 2, 3},
    {4},
)


@pytest.fixture
def twelve_voter_profile() -> ApprovalProfile:
    return ApprovalProfile(6, TWELVE_VOTER_BALLOTS)


@pytest.fixture
def five_voter_profile() -> ApprovalProfile:
    return ApprovalProfile(4, FIVE_VOTER_BALLOTS)


def committees(winners) -> list[list[int]]:
    """Canonical rendering of a set of committees for comparisons."""
    return sorted(sorted(c) for c in winners)
