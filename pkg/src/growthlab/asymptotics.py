"""Dominant pole isolation and the constants of sphere-growth asymptotics."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import polynomials as P
from .errors import GrowthLabError, NotApplicableError
from .series import RationalGrowthFunction

DEFAULT_TOLERANCE = Fraction(1, 10**9)
log = logging.getLogger(__name__)

ASYMPTOTICS_SCHEMA = "growthlab.asymptotics/1"


@dataclass(frozen=True)
class PoleInfo:
    lo: Fraction
    hi: Fraction
    multiplicity: int
    factor: tuple[Fraction, ...]  # monic square-free factor containing the root
    exact: Fraction | None = None  # the root itself when rational


def _isolate_smallest(factor, tolerance: Fraction) -> tuple[Fraction, Fraction, list] | None:
    """Interval ``(lo, hi]`` around the smallest positive root of a square-free factor.

    The tolerance bounds the width of the reciprocal interval ``[1/hi, 1/lo]``.
    """
    seq = P.sturm_sequence(factor)
    lo, hi = Fraction(0), P.cauchy_bound(factor)
    if P.count_roots(seq, lo, hi) == 0:
        return None
    while lo == 0 or 1 / lo - 1 / hi > tolerance or P.count_roots(seq, lo, hi) > 1:
        mid = (lo + hi) / 2
        if P.count_roots(seq, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi, seq


def _refine(factor, seq, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    mid = (lo + hi) / 2
    return (lo, mid) if P.count_roots(seq, lo, mid) >= 1 else (mid, hi)


def smallest_positive_pole(den: Sequence[int], tolerance: Fraction = DEFAULT_TOLERANCE) -> PoleInfo | None:
    """Isolate the smallest positive real root of ``den`` by exact bisection.

    The returned interval is narrow enough that its reciprocal, the growth
    rate interval, has width at most ``tolerance``.

    Square-free factors are isolated separately (their roots are distinct),
    and intervals are refined until the smallest root is separated from the
    others.  A rational root is returned exactly.  None when ``den`` has no
    positive real root.
    """
    den = P.trim(den)
    if not den or den[0] != 1:
        raise ValueError("denominator must have constant term 1")
    found = []
    for factor, mult in P.squarefree_decomposition(den):
        iso = _isolate_smallest(factor, tolerance)
        if iso is not None:
            found.append([factor, mult, *iso])
    if not found:
        return None
    while True:
        found.sort(key=lambda f: f[2])
        first = found[0]
        if all(first[3] <= other[2] for other in found[1:]):
            break
        for f in found:
            f[2], f[3] = _refine(f[0], f[4], f[2], f[3])
    factor, mult, lo, hi, _ = first
    exact = None
    if P.evaluate(factor, hi) == 0:
        exact = hi
    else:
        for x in P.rational_root_candidates(P.primitive(factor), lo, hi):
            exact = x
    if exact is not None:
        lo = hi = exact
    return PoleInfo(lo, hi, mult, tuple(Fraction(x) for x in factor), exact)


def _equal_modulus_poles(den: Sequence[int], rho: float) -> bool:
    """Heuristic: another pole has modulus within 1e-6 of ``rho``."""
    roots = np.roots([float(x) for x in reversed(P.trim(den))])
    close = [r for r in roots if abs(abs(r) - rho) <= 1e-6 * max(rho, 1.0)]
    others = [r for r in close if abs(r - rho) > 1e-6 * max(rho, 1.0)]
    smaller = [r for r in roots if abs(r) < rho * (1 - 1e-6)]
    return bool(others or smaller)


@dataclass(frozen=True)
class GrowthAsymptotics:
    lambda_lo: Fraction
    lambda_hi: Fraction
    alpha: int
    C_hat: Fraction
    D_hat: Fraction
    lambda_exact: Fraction | None = None
    lambda_poly: tuple[int, ...] = ()  # integer polynomial with root lambda
    warning: str | None = None
    radius: int = 0

    def __post_init__(self):
        assert self.lambda_lo <= self.lambda_hi
        assert self.alpha >= 0
        assert 0 < self.C_hat <= self.D_hat

    @property
    def lambda_interval(self) -> tuple[Fraction, Fraction]:
        return self.lambda_lo, self.lambda_hi

    @property
    def lambda_float(self) -> float:
        return float((self.lambda_lo + self.lambda_hi) / 2)

    def to_dict(self) -> dict:
        return {
            "schema": ASYMPTOTICS_SCHEMA,
            "lambda_interval": [str(self.lambda_lo), str(self.lambda_hi)],
            "lambda_approx": self.lambda_float,
            "lambda_exact": None if self.lambda_exact is None else str(self.lambda_exact),
            "lambda_minimal_polynomial": list(self.lambda_poly),
            "alpha": self.alpha,
            "C_hat": str(self.C_hat),
            "D_hat": str(self.D_hat),
            "C_hat_approx": float(self.C_hat),
            "D_hat_approx": float(self.D_hat),
            "warning": self.warning,
            "radius": self.radius,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def normalized_ratios(spheres: Sequence[int], alpha: int, lam: Fraction) -> list[Fraction]:
    """``S(n) / (n**alpha * lam**n)`` for ``n >= 1``."""
    return [Fraction(spheres[n], n**alpha) / lam**n for n in range(1, len(spheres))]


def check_asymptotics(a: GrowthAsymptotics, spheres: Sequence[int]) -> bool:
    for n in range(1, len(spheres)):
        s = spheres[n]
        if not (a.C_hat * n**a.alpha * a.lambda_hi**n <= s <= a.D_hat * n**a.alpha * a.lambda_lo**n):
            return False
    return True


def extract_asymptotics(
    r: RationalGrowthFunction,
    table,
    tolerance: Fraction = DEFAULT_TOLERANCE,
) -> GrowthAsymptotics:
    """Growth rate, polynomial degree and on-range constants from a fitted series.

    ``table`` is a growth table (or a plain list of sphere sizes).  The
    function must be the spherical one; fit the volume series and apply
    ``times_one_minus_t`` first otherwise.
    """
    if r.kind != "spherical":
        raise GrowthLabError("extract_asymptotics needs the spherical growth function")
    spheres = list(getattr(table, "sphere_counts", table))
    if len(spheres) < 5:
        raise GrowthLabError("table radius must be at least 4")
    pole = smallest_positive_pole(r.denominator, tolerance)
    if pole is None:
        raise NotApplicableError("denominator has no positive real root; growth rate undefined by this method")
    if pole.exact is not None:
        lam_lo = lam_hi = 1 / pole.exact
        lam_exact = lam_lo
    else:
        lam_lo, lam_hi = 1 / pole.hi, 1 / pole.lo
        lam_exact = None
    alpha = pole.multiplicity - 1
    # lambda is a root of the reversed factor
    lam_poly = tuple(P.primitive(P.reverse(list(pole.factor))))
    warning = None
    if _equal_modulus_poles(r.denominator, float((pole.lo + pole.hi) / 2)):
        warning = "another pole has modulus equal to or below the dominant positive pole"
        log.info("%s", warning)
    C_hat = min(normalized_ratios(spheres, alpha, lam_hi))
    D_hat = max(normalized_ratios(spheres, alpha, lam_lo))
    if C_hat <= 0:
        raise GrowthLabError("a sphere is empty; the group is finite on this range")
    a = GrowthAsymptotics(lam_lo, lam_hi, alpha, C_hat, D_hat, lam_exact, lam_poly, warning, len(spheres) - 1)
    assert check_asymptotics(a, spheres)
    return a
