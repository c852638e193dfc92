"""Growth series and exact rational-function fitting.

The fitter looks for the rational function ``P/Q`` of smallest denominator
degree (then smallest numerator degree) whose Taylor expansion agrees with
the training coefficients, solving the Hankel-type linear system over the
rationals.  Any coefficient held out of training must then be reproduced
exactly, or the fit is rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import polynomials as P
from .errors import MalformedSeriesError, NoFitError, OverfitError

KINDS = ("spherical", "volume")
FUNCTION_SCHEMA = "growthlab.rational-function/1"


@dataclass(frozen=True)
class SeriesCoefficients:
    kind: str
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.kind not in KINDS:
            raise MalformedSeriesError(f"series kind must be one of {KINDS}, got {self.kind!r}")
        if not self.values:
            raise MalformedSeriesError("a series needs at least one coefficient")
        for v in self.values:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise MalformedSeriesError(f"coefficients must be nonnegative integers, got {v!r}")
        if self.values[0] != 1:
            raise MalformedSeriesError(f"coefficient 0 must be 1 (the identity), got {self.values[0]}")
        if self.kind == "volume" and any(b < a for a, b in zip(self.values, self.values[1:])):
            raise MalformedSeriesError("volume coefficients must be nondecreasing")

    def __len__(self):
        return len(self.values)

    @classmethod
    def spherical(cls, table) -> "SeriesCoefficients":
        return cls("spherical", table.sphere_counts)

    @classmethod
    def volume(cls, table) -> "SeriesCoefficients":
        return cls("volume", table.ball_counts)


def spherical_volume_convert(s: SeriesCoefficients) -> SeriesCoefficients:
    """Prefix sums (spherical to volume) or first differences (volume to spherical)."""
    v = s.values
    if s.kind == "spherical":
        out, acc = [], 0
        for x in v:
            acc += x
            out.append(acc)
        return SeriesCoefficients("volume", tuple(out))
    return SeriesCoefficients("spherical", (v[0],) + tuple(b - a for a, b in zip(v, v[1:])))


@dataclass(frozen=True)
class RationalGrowthFunction:
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    kind: str = "spherical"
    train_window: tuple[int, int] = (0, 0)
    verified_through: int = 0

    def __post_init__(self):
        if not self.denominator or self.denominator[0] != 1:
            raise MalformedSeriesError("denominator must have constant term 1")
        if P.degree(P.poly_gcd(self.numerator, self.denominator)) > 0:
            raise MalformedSeriesError("numerator and denominator are not coprime")

    @property
    def order(self) -> int:
        return len(self.denominator) - 1

    def expand(self, n_terms: int) -> list[int]:
        """First ``n_terms`` Taylor coefficients."""
        num, den = self.numerator, self.denominator
        out: list[int] = []
        for n in range(n_terms):
            c = num[n] if n < len(num) else 0
            for i in range(1, min(n, len(den) - 1) + 1):
                c -= den[i] * out[n - i]
            out.append(c)
        return out

    def times_one_minus_t(self) -> "RationalGrowthFunction":
        """Convert a volume function into the matching spherical one."""
        num = P.mul(self.numerator, [1, -1])
        g = P.poly_gcd(num, self.denominator)
        num_r = P.exact_div(num, g)
        den_r = P.exact_div(self.denominator, g)
        num_i, den_i = _normalize(num_r, den_r)  # integral: den(0) = 1 already
        return RationalGrowthFunction(num_i, den_i, "spherical", self.train_window, self.verified_through)

    def to_dict(self) -> dict:
        return {
            "schema": FUNCTION_SCHEMA,
            "kind": self.kind,
            "numerator": list(self.numerator),
            "denominator": list(self.denominator),
            "train_window": list(self.train_window),
            "verified_through": self.verified_through,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "RationalGrowthFunction":
        return cls(
            tuple(data["numerator"]),
            tuple(data["denominator"]),
            data.get("kind", "spherical"),
            tuple(data["train_window"]),
            data["verified_through"],
        )

    def __str__(self) -> str:
        return f"({P.to_str(self.numerator)}) / ({P.to_str(self.denominator)})"


def _normalize(num, den) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Scale so that ``den(0) = 1``; None unless all coefficients are then integers."""
    c0 = Fraction(den[0])
    num = [Fraction(x) / c0 for x in num]
    den = [Fraction(x) / c0 for x in den]
    if any(x.denominator != 1 for x in num + den):
        return None
    return tuple(int(x) for x in P.trim(num)), tuple(int(x) for x in P.trim(den))


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction], n: int) -> list[Fraction] | None:
    """A solution of an overdetermined rational system, or None when inconsistent."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in m[r:]):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol


def _try_fit(c: Sequence[int], d: int, m: int):
    """Denominator of degree ``<= d`` and numerator of degree ``<= m`` matching ``c``."""
    T = len(c)
    rows, rhs = [], []
    for n in range(m + 1, T):
        rows.append([Fraction(c[n - i]) if n - i >= 0 else Fraction(0) for i in range(1, d + 1)])
        rhs.append(Fraction(-c[n]))
    q = _solve_exact(rows, rhs, d) if d else ([] if all(x == 0 for x in rhs) else None)
    if q is None:
        return None
    den = [Fraction(1)] + q
    num = P.trim(P.mul(den, [Fraction(x) for x in c])[: m + 1])
    return num, P.trim(den)


def default_max_order(n_coefficients: int) -> int:
    return max(0, (n_coefficients - 1 - 2) // 2)


def fit_rational(
    c: SeriesCoefficients,
    max_order: int | None = None,
    train: int | None = None,
    holdout: int = 2,
) -> RationalGrowthFunction:
    """Smallest rational function reproducing the training coefficients.

    ``train`` is the number of leading coefficients used for fitting and
    defaults to all but ``holdout``; everything after it is held out and
    must be matched exactly.
    """
    values = c.values
    total = len(values)
    if train is None:
        train = total - holdout
    if max_order is None:
        max_order = default_max_order(total)
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    if total - train < 2:
        raise MalformedSeriesError(f"need at least 2 held-out coefficients, have {total - train}")
    if total < 2 * max_order + 2:
        raise MalformedSeriesError(
            f"order {max_order} needs at least {2 * max_order + 2} coefficients, have {total}"
        )
    head = values[:train]
    for d in range(max_order + 1):
        for m in range(0, train - d - 1):
            fit = _try_fit(head, d, m)
            if fit is None:
                continue
            num, den = fit
            g = P.poly_gcd(num, den)
            num, den = P.exact_div(num, g), P.exact_div(den, g)
            normalized = _normalize(num, den)
            if normalized is None:
                # an integer sequence with a rational series has an integral one
                continue
            num_i, den_i = normalized
            candidate = RationalGrowthFunction(num_i, den_i, c.kind, (0, train - 1), train - 1)
            predicted = candidate.expand(total)
            for n in range(train, total):
                if predicted[n] != values[n]:
                    raise OverfitError(
                        f"fit {candidate} (order {len(den_i) - 1}) predicts {predicted[n]} "
                        f"at n={n} but the table has {values[n]}"
                    )
            return RationalGrowthFunction(num_i, den_i, c.kind, (0, train - 1), total - 1)
    raise NoFitError(
        f"no rational function with denominator degree <= {max_order} fits "
        f"{train} coefficients; a larger radius may be needed"
    )
