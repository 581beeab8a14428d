"""Weight sequences and divisor sequences.

A weight sequence assigns a non-negative rational ``w_j`` to every rank
``j >= 1``; committee rules score a voter by summing the first
``|ballot ∩ committee|`` weights.  A divisor sequence assigns a rational
``d(s)`` to every seat count ``s >= 0``; highest-averages apportionment
awards the next seat to a party maximizing ``votes / d(seats so far)``.

Both kinds are infinite; they are represented by closed-form families or
by an explicit prefix with a constant (weights) or affine (divisors)
tail.  An *impervious* divisor sequence has ``d(0) = 0``, meaning a
party's first claim is infinite; such claims are ordered among
themselves by vote count.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

RationalLike = Union[int, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or ``"num/den"`` string to a Fraction."""
    return Fraction(value)


class WeightSequence:
    """An infinite sequence of non-negative rational weights ``w_1, w_2, ...``."""

    def __init__(self, label: str, fn: Callable[[int], Fraction]):
        self._label = label
        self._fn = fn
        self._weights: list[Fraction] = []
        self._sums: list[Fraction] = [Fraction(0)]

    def __repr__(self) -> str:
        return f"WeightSequence({self._label})"

    @property
    def label(self) -> str:
        return self._label

    def _ensure(self, upto: int) -> None:
        while len(self._weights) < upto:
            j = len(self._weights) + 1
            w = Fraction(self._fn(j))
            if w < 0:
                raise ValueError(f"weight w_{j} of {self._label} is negative")
            self._weights.append(w)
            self._sums.append(self._sums[-1] + w)

    def weight_at(self, j: int) -> Fraction:
        """The weight ``w_j`` (requires ``j >= 1``)."""
        if j < 1:
            raise ValueError("weight index must be >= 1")
        self._ensure(j)
        return self._weights[j - 1]

    def satisfaction(self, count: int) -> Fraction:
        """The prefix sum ``w_1 + ... + w_count`` (``count >= 0``)."""
        if count < 0:
            raise ValueError("count must be >= 0")
        self._ensure(count)
        return self._sums[count]

    def is_nonincreasing(self, upto: int = 100) -> bool:
        """Whether ``w_1 >= w_2 >= ... >= w_upto`` holds."""
        self._ensure(upto)
        return all(self._weights[j] >= self._weights[j + 1] for j in range(upto - 1))

    def is_positive(self, upto: int = 100) -> bool:
        """Whether ``w_j > 0`` for every ``j <= upto``."""
        self._ensure(upto)
        return all(w > 0 for w in self._weights[:upto])

    @classmethod
    def pav(cls) -> "WeightSequence":
        """Harmonic weights 1, 1/2, 1/3, ..."""
        return cls("pav", lambda j: Fraction(1, j))

    @classmethod
    def chamberlin_courant(cls) -> "WeightSequence":
        """Coverage weights 1, 0, 0, ...: only a first representative counts."""
        return cls("cc", lambda j: Fraction(1 if j == 1 else 0))

    @classmethod
    def top_k(cls) -> "WeightSequence":
        """Constant weights 1, 1, 1, ...: plain approval counting."""
        return cls("top-k", lambda j: Fraction(1))

    @classmethod
    def penrose(cls) -> "WeightSequence":
        """Inverse-square weights 1, 1/4, 1/9, ..."""
        return cls("penrose", lambda j: Fraction(1, j * j))

    @classmethod
    def harmonic_odd(cls) -> "WeightSequence":
        """Odd-harmonic weights 1, 1/3, 1/5, ..."""
        return cls("harmonic-odd", lambda j: Fraction(1, 2 * j - 1))

    @classmethod
    def affine(cls, bonus: RationalLike) -> "WeightSequence":
        """Weights 0, 0, 0, 0, Z, 1, 1/2, 1/3, ... with ``Z = bonus``.

        The large fifth weight forces every party up to five seats, after
        which the harmonic tail hands out the rest proportionally.
        """
        z = as_rational(bonus)
        if z <= 0:
            raise ValueError("the bonus weight must be positive")

        def fn(j: int) -> Fraction:
            if j <= 4:
                return Fraction(0)
            if j == 5:
                return z
            return Fraction(1, j - 5)

        return cls(f"affine({z})", fn)

    @classmethod
    def truncated(cls, base: "WeightSequence", zeros: int) -> "WeightSequence":
        """``base`` with its first ``zeros`` weights replaced by zeros."""
        if zeros < 0:
            raise ValueError("the number of zeroed weights must be >= 0")
        return cls(
            f"truncated({base.label},{zeros})",
            lambda j: Fraction(0) if j <= zeros else base.weight_at(j),
        )

    @classmethod
    def explicit(cls, prefix: Iterable[RationalLike], tail: RationalLike = 0) -> "WeightSequence":
        """A finite prefix of weights followed by a constant tail."""
        pre = tuple(as_rational(w) for w in prefix)
        tail_w = as_rational(tail)
        if any(w < 0 for w in pre) or tail_w < 0:
            raise ValueError("weights must be non-negative")
        label = ",".join(str(w) for w in pre) + f";tail={tail_w}"
        return cls(
            f"explicit({label})",
            lambda j: pre[j - 1] if j <= len(pre) else tail_w,
        )


class DivisorSequence:
    """A non-decreasing sequence of rational divisors ``d(0), d(1), ...``.

    Every entry is positive, except that an impervious sequence has
    ``d(0) = 0``.
    """

    def __init__(self, label: str, fn: Callable[[int], Fraction], *, impervious: bool = False):
        self._label = label
        self._fn = fn
        self.impervious = impervious
        self._divisors: list[Fraction] = []

    def __repr__(self) -> str:
        return f"DivisorSequence({self._label})"

    @property
    def label(self) -> str:
        return self._label

    def divisor_at(self, s: int) -> Fraction:
        """The divisor ``d(s)`` (requires ``s >= 0``)."""
        if s < 0:
            raise ValueError("divisor index must be >= 0")
        while len(self._divisors) <= s:
            self._divisors.append(Fraction(self._fn(len(self._divisors))))
        return self._divisors[s]

    def validate(self, upto: int) -> None:
        """Check positivity and monotonicity of ``d(0) .. d(upto)``.

        Impervious sequences must have ``d(0) = 0``; every other entry
        must be positive, and the sequence must be non-decreasing.
        """
        values = [self.divisor_at(s) for s in range(upto + 1)]
        if self.impervious:
            if values[0] != 0:
                raise ValueError(f"{self._label}: impervious sequence must start at 0")
        elif values[0] <= 0:
            raise ValueError(f"{self._label}: d(0) must be positive")
        if any(v <= 0 for v in values[1:]):
            raise ValueError(f"{self._label}: divisors beyond d(0) must be positive")
        if any(a > b for a, b in zip(values, values[1:])):
            raise ValueError(f"{self._label}: divisors must be non-decreasing")

    @classmethod
    def dhondt(cls) -> "DivisorSequence":
        """Divisors 1, 2, 3, ..."""
        return cls("dhondt", lambda s: Fraction(s + 1))

    @classmethod
    def sainte_lague(cls) -> "DivisorSequence":
        """Divisors 1, 3, 5, ..."""
        return cls("sainte-lague", lambda s: Fraction(2 * s + 1))

    @classmethod
    def from_weights(cls, weights: WeightSequence) -> "DivisorSequence":
        """The reciprocal sequence ``d(s) = 1 / w_{s+1}``.

        Defined only where the weight is non-zero; querying a zero-weight
        position raises ``ValueError``.
        """

        def fn(s: int) -> Fraction:
            w = weights.weight_at(s + 1)
            if w == 0:
                raise ValueError(
                    f"divisor d({s}) undefined: weight w_{s + 1} of {weights.label} is zero"
                )
            return 1 / w

        return cls(f"from-weights({weights.label})", fn)

    @classmethod
    def explicit(
        cls,
        prefix: Sequence[RationalLike],
        tail_slope: RationalLike | None = None,
        tail_intercept: RationalLike | None = None,
    ) -> "DivisorSequence":
        """A finite prefix followed by the affine tail ``d(s) = a*s + b``.

        The tail applies from index ``len(prefix)`` on and evaluates the
        affine form at the absolute index ``s``.  Without a tail, indices
        beyond the prefix raise ``ValueError``.  A prefix starting at 0
        yields an impervious sequence.
        """
        pre = tuple(as_rational(d) for d in prefix)
        slope = as_rational(tail_slope) if tail_slope is not None else None
        intercept = as_rational(tail_intercept) if tail_intercept is not None else None
        if (slope is None) != (intercept is None):
            raise ValueError("tail slope and intercept must be given together")
        if not pre and slope is None:
            raise ValueError("an explicit divisor sequence needs a prefix or a tail")

        def fn(s: int) -> Fraction:
            if s < len(pre):
                return pre[s]
            if slope is None:
                raise ValueError(f"divisor d({s}) beyond prefix of length {len(pre)}")
            return slope * s + intercept

        label = ",".join(str(d) for d in pre)
        if slope is not None:
            label += f";tail={slope}*s+{intercept}"
        impervious = bool(pre) and pre[0] == 0
        return cls(f"explicit({label})", fn, impervious=impervious)


def claim_key(votes: int, divisor: Fraction) -> tuple[int, Fraction]:
    """A sort key ordering claims ``votes / divisor`` exactly.

    A zero divisor makes the claim infinite; infinite claims beat every
    finite claim and are ordered among themselves by vote count.
    """
    if votes <= 0:
        raise ValueError("vote count must be positive")
    if divisor < 0:
        raise ValueError("divisor must be non-negative")
    if divisor == 0:
        return (1, Fraction(votes))
    return (0, Fraction(votes) / divisor)


def compare_claims(v_a: int, d_a: Fraction, v_b: int, d_b: Fraction) -> int:
    """Order ``v_a/d_a`` against ``v_b/d_b``: -1, 0, or 1."""
    key_a, key_b = claim_key(v_a, d_a), claim_key(v_b, d_b)
    return (key_a > key_b) - (key_a < key_b)
