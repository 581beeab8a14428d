"""Exact apportionment methods and approval-based committee election rules."""

from .core import (
    ApportionmentInstance,
    ApprovalProfile,
    Committee,
    DivisibilityError,
    ElectionError,
    EnumerationCapError,
    InfeasibleCommitteeError,
    SeatDistribution,
    TieExplosionError,
)
from .sequences import DivisorSequence, WeightSequence, compare_claims
from .apportionment import (
    divisor_apportion,
    largest_remainder,
    move_seat,
    satisfies_lower_quota,
    satisfies_quota,
)
from .multiwinner import (
    balanced_load_matrix,
    balanced_loads,
    mav_score,
    mav_winners,
    max_phragmen_winners,
    min_max_load,
    monroe_satisfaction,
    monroe_winners,
    owa_satisfaction,
    owa_winners,
    sav_score,
    sav_winners,
    seq_owa_winners,
    validate_load,
    var_phragmen_winners,
)
from .embedding import (
    PartyListEmbedding,
    embed,
    extract_seats,
    induced_apportionment,
    induced_via_enumeration,
    partylist_maxload,
    partylist_monroe_value,
    partylist_owa_value,
    partylist_sumsquares,
)
from .properties import (
    CLAIM_IDS,
    SweepConfig,
    VerificationReport,
    check_cambridge,
    check_lower_quota,
    check_penrose,
    check_pjr,
    check_quota,
    check_threshold,
    penrose_lower_bounds,
    uniqueness_witness,
    verify_claim,
)

__all__ = [
    "ApportionmentInstance",
    "ApprovalProfile",
    "CLAIM_IDS",
    "Committee",
    "DivisibilityError",
    "DivisorSequence",
    "ElectionError",
    "EnumerationCapError",
    "InfeasibleCommitteeError",
    "PartyListEmbedding",
    "SeatDistribution",
    "SweepConfig",
    "TieExplosionError",
    "VerificationReport",
    "WeightSequence",
    "balanced_load_matrix",
    "balanced_loads",
    "check_cambridge",
    "check_lower_quota",
    "check_penrose",
    "check_pjr",
    "check_quota",
    "check_threshold",
    "compare_claims",
    "divisor_apportion",
    "embed",
    "extract_seats",
    "induced_apportionment",
    "induced_via_enumeration",
    "largest_remainder",
    "mav_score",
    "mav_winners",
    "max_phragmen_winners",
    "min_max_load",
    "monroe_satisfaction",
    "monroe_winners",
    "move_seat",
    "owa_satisfaction",
    "owa_winners",
    "partylist_maxload",
    "partylist_monroe_value",
    "partylist_owa_value",
    "partylist_sumsquares",
    "penrose_lower_bounds",
    "sav_score",
    "sav_winners",
    "satisfies_lower_quota",
    "satisfies_quota",
    "seq_owa_winners",
    "uniqueness_witness",
    "validate_load",
    "var_phragmen_winners",
    "verify_claim",
]

__version__ = "0.1.0"
