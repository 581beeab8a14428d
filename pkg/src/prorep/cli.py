"""Command-line front end.

Subcommands: ``apportion`` (seat allocation methods), ``elect``
(committee rules on ballot profiles), ``induce`` (committee rules run as
apportionment methods), ``check`` (representation properties of a given
allocation), ``verify`` (claim sweeps), and ``gen`` (seeded instance
files).  Output is JSON by default (``--output table`` for plain text)
and is byte-identical across runs for identical inputs.

Exit codes: 0 success or pass, 1 failed property or claim, 2 bad usage
or input.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import multiwinner
from .core import (
    ApportionmentInstance,
    ApprovalProfile,
    Committee,
    ElectionError,
    check_distribution,
)
from .embedding import (
    embed,
    induced_apportionment,
    partylist_maxload,
    partylist_monroe_value,
    partylist_owa_value,
    partylist_sumsquares,
)
from .apportionment import divisor_apportion, largest_remainder
from .properties import CLAIM_IDS, SweepConfig, penrose_lower_bounds, verify_claim
from .sequences import DivisorSequence, WeightSequence


class UsageError(Exception):
    """Bad command-line input; reported on stderr with exit code 2."""


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {text!r}: {exc}") from None


def parse_weights(spec: str) -> WeightSequence:
    """Weight-sequence grammar: a family name (``pav``, ``cc``, ``topk``,
    ``penrose``, ``harmonic-odd``, ``affine:<Z>``,
    ``truncated:<family>:<t>``) or a comma-separated rational prefix with
    an optional ``;tail=<rational>`` (default tail 0)."""
    name = spec.strip().lower()
    if name == "pav":
        return WeightSequence.pav()
    if name == "cc":
        return WeightSequence.chamberlin_courant()
    if name in ("topk", "top-k"):
        return WeightSequence.top_k()
    if name == "penrose":
        return WeightSequence.penrose()
    if name == "harmonic-odd":
        return WeightSequence.harmonic_odd()
    if name.startswith("affine:"):
        return WeightSequence.affine(_rational(name.split(":", 1)[1]))
    if name.startswith("truncated:"):
        parts = name.split(":")
        if len(parts) != 3:
            raise UsageError(f"bad weight spec {spec!r}: expected truncated:<family>:<t>")
        try:
            zeros = int(parts[2])
        except ValueError:
            raise UsageError(f"bad truncation count {parts[2]!r}") from None
        return WeightSequence.truncated(parse_weights(parts[1]), zeros)
    tail = Fraction(0)
    body = name
    if ";" in name:
        body, tail_part = name.split(";", 1)
        if not tail_part.startswith("tail="):
            raise UsageError(f"bad weight spec {spec!r}: expected ;tail=<rational>")
        tail = _rational(tail_part[len("tail="):])
    try:
        prefix = [_rational(w) for w in body.split(",") if w != ""]
    except UsageError:
        raise UsageError(f"bad weight spec {spec!r}") from None
    if not prefix:
        raise UsageError(f"bad weight spec {spec!r}: empty prefix")
    try:
        return WeightSequence.explicit(prefix, tail)
    except ValueError as exc:
        raise UsageError(f"bad weight spec {spec!r}: {exc}") from None


RULE_NAMES = (
    "pav",
    "cc",
    "topk",
    "seq-pav",
    "owa:<weights>",
    "seq-owa:<weights>",
    "monroe",
    "max-phragmen",
    "var-phragmen",
    "sav",
    "mav",
)


def parse_rule(spec: str) -> tuple[str, WeightSequence | None]:
    """Map a rule spec to ``(rule identifier, weight sequence or None)``."""
    name = spec.strip().lower()
    if name == "pav":
        return "owa", WeightSequence.pav()
    if name == "cc":
        return "owa", WeightSequence.chamberlin_courant()
    if name in ("topk", "top-k"):
        return "owa", WeightSequence.top_k()
    if name == "seq-pav":
        return "seq-owa", WeightSequence.pav()
    if name.startswith("owa:"):
        return "owa", parse_weights(name[len("owa:"):])
    if name.startswith("seq-owa:"):
        return "seq-owa", parse_weights(name[len("seq-owa:"):])
    if name in ("monroe", "max-phragmen", "var-phragmen", "sav", "mav"):
        return name, None
    raise UsageError(f"unknown rule {spec!r}; expected one of {', '.join(RULE_NAMES)}")


_AFFINE_TAIL = re.compile(r"^(?:(?P<slope>[^s]*)s)?(?P<intercept>[+-]?[^+-]*)?$")


def parse_divisors(spec: str) -> DivisorSequence:
    """Divisor grammar: ``dhondt``, ``sainte-lague``, or
    ``<d0>,<d1>,...[;tail=<a>s+<b>]`` with rational coefficients."""
    name = spec.strip().lower()
    if name == "dhondt":
        return DivisorSequence.dhondt()
    if name == "sainte-lague":
        return DivisorSequence.sainte_lague()
    body, slope, intercept = name, None, None
    if ";" in name:
        body, tail_part = name.split(";", 1)
        if not tail_part.startswith("tail="):
            raise UsageError(f"bad divisor spec {spec!r}: expected ;tail=<a>s+<b>")
        tail = tail_part[len("tail="):]
        match = _AFFINE_TAIL.match(tail)
        if not match or not tail:
            raise UsageError(f"bad divisor tail {tail!r}")
        if match.group("slope") is not None:
            slope = _rational(match.group("slope") or "1")
            intercept = _rational(match.group("intercept") or "0")
        else:
            slope = Fraction(0)
            intercept = _rational(tail)
    prefix = [_rational(d) for d in body.split(",") if d != ""]
    if not prefix and slope is None:
        raise UsageError(f"bad divisor spec {spec!r}: empty")
    try:
        return DivisorSequence.explicit(prefix, slope, intercept)
    except ValueError as exc:
        raise UsageError(f"bad divisor spec {spec!r}: {exc}") from None


def _parse_ints(text: str, label: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"bad {label} {text!r}: expected comma-separated integers") from None


def _instance_from_args(args: argparse.Namespace) -> ApportionmentInstance:
    votes, seats = args.votes, args.seats
    if args.instance is not None:
        data = _load_json(args.instance)
        if "votes" not in data:
            raise UsageError(f"{args.instance}: not an apportionment instance file")
        payload = _validate_instance_file(data, args.instance)
        votes_t, seats_v = payload
        if votes is not None or seats is not None:
            raise UsageError("give either --instance or --votes/--seats, not both")
        return ApportionmentInstance(votes_t, seats_v)
    if votes is None or seats is None:
        raise UsageError("an instance is required: --votes and --seats, or --instance")
    try:
        return ApportionmentInstance(_parse_ints(votes, "votes"), seats)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_json(path: str) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"{path}: expected a JSON object")
    return data


def _validate_instance_file(data: dict[str, Any], path: str) -> tuple[tuple[int, ...], int]:
    votes = data.get("votes")
    seats = data.get("seats")
    if (
        not isinstance(votes, list)
        or not votes
        or not all(isinstance(v, int) and not isinstance(v, bool) and v > 0 for v in votes)
    ):
        raise UsageError(f'{path}: "votes" must be a non-empty list of positive integers')
    if not isinstance(seats, int) or isinstance(seats, bool) or seats <= 0:
        raise UsageError(f'{path}: "seats" must be a positive integer')
    return tuple(votes), seats


def _validate_profile_file(data: dict[str, Any], path: str) -> tuple[ApprovalProfile, int | None]:
    m = data.get("candidates")
    ballots = data.get("ballots")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise UsageError(f'{path}: "candidates" must be a positive integer')
    if not isinstance(ballots, list) or not ballots:
        raise UsageError(f'{path}: "ballots" must be a non-empty list of candidate-id lists')
    approvals = []
    for i, ballot in enumerate(ballots, start=1):
        if not isinstance(ballot, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in ballot
        ):
            raise UsageError(f"{path}: ballot {i} must be a list of integers")
        if any(not 1 <= c <= m for c in ballot):
            raise UsageError(f"{path}: ballot {i} references a candidate outside 1..{m}")
        if len(set(ballot)) != len(ballot):
            raise UsageError(f"{path}: ballot {i} repeats a candidate")
        approvals.append(frozenset(ballot))
    k = data.get("k")
    if k is not None and (not isinstance(k, int) or isinstance(k, bool) or k < 1):
        raise UsageError(f'{path}: "k" must be a positive integer')
    return ApprovalProfile(m, tuple(approvals)), k


def _emit(document: dict[str, Any], table: list[str], args: argparse.Namespace) -> None:
    if args.output == "json":
        print(json.dumps(document, indent=2, sort_keys=True))
    else:
        for line in table:
            print(line)


def _score_str(value: Fraction | int) -> str:
    return str(value)


def _outcome_rows(outcomes: set[tuple[int, ...]]) -> list[list[int]]:
    return [list(x) for x in sorted(outcomes)]


def _committee_rows(committees: set[Committee]) -> list[list[int]]:
    return sorted(sorted(c) for c in committees)


def _cmd_apportion(args: argparse.Namespace) -> int:
    instance = _instance_from_args(args)
    method = args.method.strip().lower()
    if method == "largest-remainder":
        outcomes = largest_remainder(instance)
        label = "largest-remainder"
    else:
        if method.startswith("divisor:"):
            divisors = parse_divisors(method[len("divisor:"):])
        elif method in ("dhondt", "sainte-lague"):
            divisors = parse_divisors(method)
        else:
            raise UsageError(
                f"unknown method {args.method!r}; expected dhondt, sainte-lague, "
                "largest-remainder, or divisor:<spec>"
            )
        try:
            outcomes = divisor_apportion(instance, divisors)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        label = method
    rows = _outcome_rows(outcomes)
    document = {"rule": label, "exact": True, "outcomes": rows, "scores": {}}
    table = [f"method: {label}", "outcomes:"] + [
        "  " + " ".join(str(s) for s in row) for row in rows
    ]
    _emit(document, table, args)
    return 0


_ELECT_DISPATCH = {
    "monroe": multiwinner.monroe_winners,
    "max-phragmen": multiwinner.max_phragmen_winners,
    "var-phragmen": multiwinner.var_phragmen_winners,
    "sav": multiwinner.sav_winners,
    "mav": multiwinner.mav_winners,
}


def _elect_score(
    profile: ApprovalProfile,
    rule: str,
    weights: WeightSequence | None,
    committee: Committee,
) -> Fraction | int:
    if rule in ("owa", "seq-owa"):
        return multiwinner.owa_satisfaction(profile, committee, weights)
    if rule == "monroe":
        return multiwinner.monroe_satisfaction(profile, committee)
    if rule == "max-phragmen":
        return multiwinner.min_max_load(profile, committee)
    if rule == "var-phragmen":
        loads = multiwinner.balanced_loads(profile, committee)
        return sum(load * load for load in loads)
    if rule == "sav":
        return multiwinner.sav_score(profile, committee)
    return multiwinner.mav_score(profile, committee)


def _cmd_elect(args: argparse.Namespace) -> int:
    rule, weights = parse_rule(args.rule)
    data = _load_json(args.profile)
    if "votes" in data:
        votes, seats = _validate_instance_file(data, args.profile)
        profile, k, _ = embed(ApportionmentInstance(votes, seats))
        if args.k is not None and args.k != k:
            raise UsageError(
                f"committee size {args.k} conflicts with the embedded house size {k}"
            )
    else:
        profile, file_k = _validate_profile_file(data, args.profile)
        k = args.k if args.k is not None else file_k
        if k is None:
            raise UsageError("committee size required: give -k or put \"k\" in the file")
    if rule == "owa":
        winners = multiwinner.owa_winners(profile, k, weights)
    elif rule == "seq-owa":
        winners = multiwinner.seq_owa_winners(profile, k, weights)
    else:
        winners = _ELECT_DISPATCH[rule](profile, k)
    score = _elect_score(profile, rule, weights, next(iter(winners)))
    rows = _committee_rows(winners)
    document = {
        "rule": args.rule,
        "exact": True,
        "outcomes": rows,
        "scores": {"optimal": _score_str(score)},
    }
    table = [f"rule: {args.rule}", "winning committees:"] + [
        "  " + " ".join(str(c) for c in row) for row in rows
    ] + [f"score: {_score_str(score)}"]
    _emit(document, table, args)
    return 0


def _induced_score(
    instance: ApportionmentInstance,
    rule: str,
    weights: WeightSequence | None,
    x: tuple[int, ...],
) -> Fraction | int:
    if rule in ("owa", "seq-owa"):
        return partylist_owa_value(instance, weights, x)
    if rule == "monroe":
        return partylist_monroe_value(instance, x)
    if rule == "max-phragmen":
        return partylist_maxload(instance, x)
    if rule == "var-phragmen":
        return partylist_sumsquares(instance, x)
    if rule == "sav":
        return Fraction(
            sum(v * s for v, s in zip(instance.votes, x)), instance.seats
        )
    return 2 * (instance.seats - min(x))


def _cmd_induce(args: argparse.Namespace) -> int:
    rule, weights = parse_rule(args.rule)
    instance = _instance_from_args(args)
    outcomes = induced_apportionment(rule, instance, weights)
    rows = _outcome_rows(outcomes)
    score = _induced_score(instance, rule, weights, next(iter(outcomes)))
    document = {
        "rule": args.rule,
        "exact": True,
        "outcomes": rows,
        "scores": {"optimal": _score_str(score)},
    }
    table = [f"rule: {args.rule}", "outcomes:"] + [
        "  " + " ".join(str(s) for s in row) for row in rows
    ] + [f"score: {_score_str(score)}"]
    _emit(document, table, args)
    return 0


PROPERTY_NAMES = ("lower-quota", "quota", "penrose", "cambridge", "threshold")


def _cmd_check(args: argparse.Namespace) -> int:
    instance = _instance_from_args(args)
    if args.alloc is None:
        raise UsageError("--alloc is required")
    x = _parse_ints(args.alloc, "allocation")
    try:
        x = check_distribution(instance, x)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    prop = args.property
    h, total = instance.seats, instance.total_votes
    parties: list[dict[str, Any]] = []
    try:
        if prop == "lower-quota":
            for i, (v, s) in enumerate(zip(instance.votes, x), start=1):
                floor = v * h // total
                parties.append({"party": i, "seats": s, "floor": floor, "ok": s >= floor})
        elif prop == "quota":
            for i, (v, s) in enumerate(zip(instance.votes, x), start=1):
                floor, ceiling = v * h // total, -((-v * h) // total)
                parties.append(
                    {
                        "party": i,
                        "seats": s,
                        "floor": floor,
                        "ceiling": ceiling,
                        "ok": floor <= s <= ceiling,
                    }
                )
        elif prop == "penrose":
            for i, (b, s) in enumerate(zip(penrose_lower_bounds(instance), x), start=1):
                parties.append({"party": i, "seats": s, "floor": b, "ok": s >= b})
        elif prop == "cambridge":
            base = args.base
            rest = h - base * instance.num_parties
            if rest < 0:
                raise UsageError(
                    f"house size {h} below {base} seats per party"
                )
            for i, (v, s) in enumerate(zip(instance.votes, x), start=1):
                shifted = v * rest // total
                ok = s >= base and s - base >= shifted
                parties.append(
                    {"party": i, "seats": s, "base": base, "shifted_floor": shifted, "ok": ok}
                )
        elif prop == "threshold":
            if args.t is None:
                raise UsageError("--t is required for the threshold property")
            if not 1 <= args.t < h:
                raise UsageError(f"--t must lie in 1..{h - 1}")
            seated_votes = sum(v for v, s in zip(instance.votes, x) if s > 0)
            for i, (v, s) in enumerate(zip(instance.votes, x), start=1):
                entry = {
                    "party": i,
                    "seats": s,
                    "hurdle": f"{args.t}/{h}",
                    "ok": s == 0 or v * h > args.t * seated_votes,
                }
                if s > 0:
                    entry["share"] = str(Fraction(v, seated_votes))
                parties.append(entry)
        else:
            raise UsageError(
                f"unknown property {prop!r}; expected one of {', '.join(PROPERTY_NAMES)}"
            )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    passed = all(entry["ok"] for entry in parties)
    document = {"property": prop, "passed": passed, "parties": parties}
    table = [f"property: {prop}"]
    for entry in parties:
        fields = " ".join(
            f"{key}={value}" for key, value in entry.items() if key not in ("party", "ok")
        )
        table.append(
            f"party {entry['party']}: {fields} -> {'pass' if entry['ok'] else 'FAIL'}"
        )
    table.append(f"result: {'pass' if passed else 'FAIL'}")
    _emit(document, table, args)
    return 0 if passed else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.claim not in CLAIM_IDS:
        raise UsageError(
            f"unknown claim {args.claim!r}; expected one of {', '.join(CLAIM_IDS)}"
        )
    mode = "exhaustive" if args.exhaustive else "random"
    try:
        config = SweepConfig(
            min_parties=args.min_parties,
            max_parties=args.max_parties,
            max_votes=args.max_votes,
            max_seats=args.max_seats,
            mode=mode,
            trials=args.trials,
            seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    weights = parse_weights(args.weights) if args.weights is not None else None
    try:
        report = verify_claim(args.claim, config, weights=weights, hurdle=args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    failures = [
        {
            "votes": list(failure.instance.votes),
            "seats": failure.instance.seats,
            "detail": failure.detail,
        }
        for failure in report.failures
    ]
    document = {
        "claim": report.claim,
        "instances_tested": report.instances_tested,
        "failures": failures,
        "passed": report.passed,
    }
    table = [
        f"claim: {report.claim}",
        f"instances tested: {report.instances_tested}",
        f"failures: {len(failures)}",
    ]
    for failure in failures:
        table.append(
            f"  votes={','.join(str(v) for v in failure['votes'])}"
            f" seats={failure['seats']}: {failure['detail']}"
        )
    table.append(f"elapsed: {report.elapsed_seconds:.2f}s")
    table.append(f"result: {'pass' if report.passed else 'FAIL'}")
    _emit(document, table, args)
    return 0 if report.passed else 1


def _cmd_gen(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    if args.kind == "apportionment":
        p = rng.randint(args.min_parties, args.max_parties)
        votes = [rng.randint(1, args.max_votes) for _ in range(p)]
        seats = rng.randint(1, args.max_seats)
        document: dict[str, Any] = {"votes": votes, "seats": seats}
    else:
        m = rng.randint(2, args.max_candidates)
        n = rng.randint(1, args.max_voters)
        ballots = [
            sorted(c for c in range(1, m + 1) if rng.random() < 0.5) for _ in range(n)
        ]
        document = {"candidates": m, "ballots": ballots, "k": rng.randint(1, m)}
    print(json.dumps(document, indent=2, sort_keys=True))
    return 0


def _add_instance_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--votes", help="comma-separated vote counts, one per party")
    parser.add_argument("--seats", type=int, help="number of seats to allocate")
    parser.add_argument("--instance", help="JSON instance file (alternative to --votes/--seats)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prorep",
        description="Exact apportionment methods and approval-based committee rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_apportion = sub.add_parser("apportion", help="run a seat-allocation method")
    p_apportion.add_argument("--method", required=True)
    _add_instance_arguments(p_apportion)
    p_apportion.set_defaults(handler=_cmd_apportion)

    p_elect = sub.add_parser("elect", help="run a committee rule on a profile")
    p_elect.add_argument("--rule", required=True)
    p_elect.add_argument("--profile", required=True, help="JSON ballot or instance file")
    p_elect.add_argument("-k", type=int, default=None, help="committee size")
    p_elect.set_defaults(handler=_cmd_elect)

    p_induce = sub.add_parser("induce", help="run a committee rule as an apportionment method")
    p_induce.add_argument("--rule", required=True)
    _add_instance_arguments(p_induce)
    p_induce.set_defaults(handler=_cmd_induce)

    p_check = sub.add_parser("check", help="check a property of a seat allocation")
    p_check.add_argument("--property", required=True)
    _add_instance_arguments(p_check)
    p_check.add_argument("--alloc", help="comma-separated seat counts")
    p_check.add_argument("--base", type=int, default=5, help="base seats per party")
    p_check.add_argument("--t", type=int, default=None, help="hurdle numerator")
    p_check.set_defaults(handler=_cmd_check)

    p_verify = sub.add_parser("verify", help="verify a claim over an instance sweep")
    p_verify.add_argument("--claim", required=True)
    p_verify.add_argument("--exhaustive", action="store_true")
    p_verify.add_argument("--trials", type=int, default=500)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--min-parties", type=int, default=2)
    p_verify.add_argument("--max-parties", type=int, default=3)
    p_verify.add_argument("--max-votes", type=int, default=10)
    p_verify.add_argument("--max-seats", type=int, default=5)
    p_verify.add_argument("--weights", default=None, help="weight spec for weight-family claims")
    p_verify.add_argument("--t", type=int, default=1, help="hurdle for the threshold claim")
    p_verify.set_defaults(handler=_cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a random instance file")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--kind", choices=("apportionment", "profile"), default="apportionment")
    p_gen.add_argument("--min-parties", type=int, default=2)
    p_gen.add_argument("--max-parties", type=int, default=4)
    p_gen.add_argument("--max-votes", type=int, default=20)
    p_gen.add_argument("--max-seats", type=int, default=5)
    p_gen.add_argument("--max-candidates", type=int, default=6)
    p_gen.add_argument("--max-voters", type=int, default=8)
    p_gen.set_defaults(handler=_cmd_gen)

    for command in (p_apportion, p_elect, p_induce, p_check, p_verify):
        command.add_argument("--output", choices=("json", "table"), default="json")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ElectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
