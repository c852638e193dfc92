"""On-range checks of purely exponential ball growth and the steps behind it.

Every decision is made in exact rational arithmetic.  Where a growth rate
enters only through an isolating interval ``[lo, hi]``, the endpoint that
makes the inequality hardest to satisfy is used.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .asymptotics import DEFAULT_TOLERANCE, GrowthAsymptotics, extract_asymptotics
from .cayley import ElementIndex, GrowthTable, enumerate_growth
from .errors import GrowthLabError, MissingElementsError, NotApplicableError, RadiusTooSmallError
from .presentation import GroupPresentation
from .series import RationalGrowthFunction, SeriesCoefficients, fit_rational

REPORT_SCHEMA = "growthlab.theorem-report/1"
LADDER = tuple(10**k for k in range(1, 10))
STABILITY = Fraction(1, 10**6)


def _ceil_half(x: int) -> int:
    return -((-x) // 2)


# ---------------------------------------------------------------- convolution inequality


@dataclass(frozen=True)
class ConvolutionCheck:
    n: int
    m: int
    delta: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def lemma_radius_needed(n: int, m: int, delta: int) -> int:
    """Largest radius whose sphere or ball size enters the inequality."""
    return max(n + m, delta + _ceil_half(n + m))


def convolution_rhs(spheres: Sequence[int], balls: Sequence[int], delta: int, n: int, m: int) -> int:
    return sum(spheres[l] * balls[delta + _ceil_half(n + m - l)] for l in range(n + m + 1))


def check_lemma_inequality(table: GrowthTable, delta: int, n: int, m: int) -> ConvolutionCheck:
    if n < 0 or m < 0 or delta < 1:
        raise ValueError("need n, m >= 0 and delta >= 1")
    need = lemma_radius_needed(n, m, delta)
    if table.radius < need:
        raise RadiusTooSmallError(f"the inequality for n={n}, m={m}, delta={delta} needs radius {need}", need)
    lhs = table.sphere_counts[n] * table.sphere_counts[m]
    rhs = convolution_rhs(table.sphere_counts, table.ball_counts, delta, n, m)
    return ConvolutionCheck(n, m, delta, lhs, rhs)


def lemma_sweep(table: GrowthTable, delta: int) -> list[ConvolutionCheck]:
    """Every ``(n, m)`` the table can decide."""
    out = []
    for n in range(table.radius + 1):
        for m in range(table.radius + 1):
            if lemma_radius_needed(n, m, delta) <= table.radius:
                out.append(check_lemma_inequality(table, delta, n, m))
    return out


# ---------------------------------------------------------------- fibers of the product map


@dataclass(frozen=True)
class FiberWitness:
    g: tuple[int, ...]
    ell: int
    fiber_size: int
    N: int
    bound: int
    center: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return self.fiber_size <= self.bound


@dataclass(frozen=True, eq=False)
class FiberReport:
    """Fiber sizes of ``(h, k) -> hk`` on ``S(n) x S(m)``, one entry per product ``g``."""

    n: int
    m: int
    delta: int
    pairs: int
    levels: np.ndarray = field(repr=False)  # |g|
    positions: np.ndarray = field(repr=False)  # index of g within its sphere
    sizes: np.ndarray = field(repr=False)
    bounds: np.ndarray = field(repr=False)
    table: GrowthTable = field(repr=False)
    center_ok: bool | None = None  # None when the center check was skipped

    @property
    def ell_range_ok(self) -> bool:
        lo, hi = abs(self.n - self.m), self.n + self.m
        return bool(np.all((self.levels >= lo) & (self.levels <= hi)))

    @property
    def ok(self) -> bool:
        return self.ell_range_ok and bool(np.all(self.sizes <= self.bounds))

    @property
    def max_fiber(self) -> int:
        return int(self.sizes.max()) if len(self.sizes) else 0

    @property
    def ells(self) -> list[int]:
        return sorted(set(self.levels.tolist()))

    def _witness(self, i: int) -> FiberWitness:
        ell = int(self.levels[i])
        return FiberWitness(
            self.table.words(ell)[int(self.positions[i])] if self.table.has_elements else (),
            ell,
            int(self.sizes[i]),
            self.delta + _ceil_half(self.n + self.m - ell),
            int(self.bounds[i]),
        )

    def witnesses(self) -> Iterator[FiberWitness]:
        for i in range(len(self.sizes)):
            yield self._witness(i)

    def violations(self) -> list[FiberWitness]:
        return [self._witness(i) for i in np.flatnonzero(self.sizes > self.bounds)]


def _products_rewriting(p: GroupPresentation, table: GrowthTable, n: int, m: int):
    H, K = table.elements[n], table.elements[m]
    lookup: dict[bytes, tuple[int, int]] = {}
    for ell in range(abs(n - m), n + m + 1):
        for i, row in enumerate(table.elements[ell]):
            lookup[row.tobytes()] = (ell, i)
    trie = p.rewriting.trie
    levels = np.empty(H.shape[0] * K.shape[0], dtype=np.int64)
    positions = np.empty_like(levels)
    for a in range(H.shape[0]):
        rows = np.concatenate([np.repeat(H[a : a + 1], K.shape[0], axis=0), K], axis=1)
        out, lengths = kernels.reduce_rows(rows, trie)
        base = a * K.shape[0]
        for b in range(K.shape[0]):
            levels[base + b], positions[base + b] = lookup[out[b, : lengths[b]].tobytes()]
    return levels, positions


def _products_fingerprint(table: GrowthTable, n: int, m: int, index: ElementIndex, chunk: int = 1 << 18):
    fp = table.fingerprint
    HK, KK = table.keys[n], table.keys[m]
    nh, nk = HK.shape[0], KK.shape[0]
    levels = np.empty(nh * nk, dtype=np.int64)
    positions = np.empty_like(levels)
    step = max(1, chunk // max(nk, 1))
    for a in range(0, nh, step):
        b = min(nh, a + step)
        left = np.repeat(HK[a:b], nk, axis=0)
        right = np.tile(KK, (b - a, 1))
        lv, pos = index.locate_keys(fp.multiply(left, right))
        levels[a * nk : b * nk] = lv
        positions[a * nk : b * nk] = pos
    return levels, positions


def center_vertex(g: Sequence[int], n: int, m: int) -> tuple[int, ...]:
    """Vertex of the stored geodesic for ``g`` nearest the tripod point.

    The tripod point sits at distance ``(ell + n - m) / 2`` from the identity;
    at a half-integer the shorter prefix is taken.
    """
    ell = len(g)
    return tuple(g[: max(0, (ell + n - m) // 2)])


def check_fiber_bounds(
    p: GroupPresentation,
    table: GrowthTable,
    delta: int,
    n: int,
    m: int,
    centers: bool | None = None,
    center_limit: int = 50_000,
) -> FiberReport:
    """Exhaustive fiber sizes of the product map on ``S(n) x S(m)``.

    The center containment ``c^-1 h`` in ``B(N)`` is also tested when
    ``centers`` is true, or by default when there are at most
    ``center_limit`` pairs.
    """
    if not table.has_elements:
        raise MissingElementsError("fiber checks need element stores; enumerate with store_elements=True")
    need = max(n + m, delta + min(n, m))
    if table.radius < need:
        raise RadiusTooSmallError(f"fiber check for n={n}, m={m} needs radius {need}", need)
    pairs = table.sphere_counts[n] * table.sphere_counts[m]
    if p.rewriting is not None:
        levels, positions = _products_rewriting(p, table, n, m)
        index = None
    else:
        index = ElementIndex(p, table)
        levels, positions = _products_fingerprint(table, n, m, index)
    offsets = np.concatenate([[0], np.cumsum(table.sphere_counts)])
    flat = offsets[levels] + positions
    uniq, first, sizes = np.unique(flat, return_index=True, return_counts=True)
    g_levels = levels[first]
    g_pos = positions[first]
    balls = np.asarray(table.ball_counts, dtype=np.int64)
    N = delta + (n + m - g_levels + 1) // 2
    bounds = balls[np.minimum(N, table.radius)]
    center_ok = None
    if centers or (centers is None and pairs <= center_limit):
        center_ok = _check_centers(p, table, delta, n, m, levels, positions, index)
    return FiberReport(n, m, delta, pairs, g_levels, g_pos, sizes, bounds, table, center_ok)


def _check_centers(p, table, delta, n, m, levels, positions, index) -> bool:
    from .presentation import canonical_form
    from .words import inverse

    H = table.words(n)
    nk = table.sphere_counts[m]
    spheres = {ell: table.words(ell) for ell in range(abs(n - m), n + m + 1)}
    cache: dict[tuple[int, int], tuple[int, ...]] = {}
    for flat_i in range(len(levels)):
        ell, pos = int(levels[flat_i]), int(positions[flat_i])
        c = cache.get((ell, pos))
        if c is None:
            c = cache[(ell, pos)] = center_vertex(spheres[ell][pos], n, m)
        h = H[flat_i // nk]
        N = delta + _ceil_half(n + m - ell)
        w = inverse(c, p.alphabet) + h
        if p.rewriting is not None:
            length = len(canonical_form(w, p))
        else:
            try:
                length = index.length(w)
            except GrowthLabError:
                return False
        if length > N:
            return False
    return True


def fiber_sweep(p: GroupPresentation, table: GrowthTable, delta: int, limit: int = 4) -> list[FiberReport]:
    out = []
    for n in range(limit + 1):
        for m in range(limit + 1):
            if max(n + m, delta + min(n, m)) <= table.radius:
                out.append(check_fiber_bounds(p, table, delta, n, m))
    return out


# ---------------------------------------------------------------- ball bounds


@dataclass(frozen=True)
class BallBoundsCheck:
    C: Fraction
    D: Fraction
    alpha: int
    flags: tuple[bool, ...]  # n = 1..R

    @property
    def ok(self) -> bool:
        return all(self.flags)


def ball_bounds(n: int, a: GrowthAsymptotics) -> tuple[Fraction, Fraction]:
    """Conservative lower and upper ball bounds at radius ``n``.

    The upper bound uses ``max(D, 1)`` so that the identity's own sphere
    is absorbed by the geometric sum.
    """
    lo, hi = a.lambda_lo, a.lambda_hi
    D = max(a.D_hat, Fraction(1))
    lower = a.C_hat * n**a.alpha * lo**n
    upper = D * hi / (lo - 1) * n**a.alpha * hi**n
    return lower, upper


def check_ball_bounds(table: GrowthTable, a: GrowthAsymptotics) -> BallBoundsCheck:
    if a.lambda_lo <= 1:
        raise NotApplicableError("growth rate is not above 1; the exponential-growth hypothesis fails")
    flags = []
    for n in range(1, table.radius + 1):
        lower, upper = ball_bounds(n, a)
        flags.append(lower < table.ball_counts[n] < upper)
    return BallBoundsCheck(a.C_hat, max(a.D_hat, Fraction(1)), a.alpha, tuple(flags))


# ---------------------------------------------------------------- epsilon schedule and split


def icbrt(n: int) -> int:
    """Exact integer cube root ``floor(n ** (1/3))`` for ``n >= 0``."""
    if n < 0:
        raise ValueError("cube root of a negative number")
    r = int(round(n ** (1 / 3)))
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def epsilon_default(n: int, delta: int) -> int:
    return 2 * delta + icbrt(n)


@dataclass(frozen=True)
class EpsilonSchedule:
    delta: int

    def __call__(self, n: int) -> int:
        return epsilon_default(n, self.delta)


@dataclass(frozen=True)
class RhsSplit:
    n: int
    epsilon: int
    lhs_const: Fraction
    head_bound: Fraction
    tail_bound: Fraction

    @property
    def contradiction(self) -> bool:
        return self.head_bound + self.tail_bound < self.lhs_const

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "epsilon": self.epsilon,
            "lhs_const": float(self.lhs_const),
            "head_bound": float(self.head_bound),
            "tail_bound": float(self.tail_bound),
            "contradiction": self.contradiction,
        }


def lhs_constant(alpha: int, lambda_interval, C: Fraction, D: Fraction) -> Fraction:
    """``C^2 (lambda - 1) / (2^alpha D^2 lambda)``, rounded down through ``lambda_lo``."""
    lo = Fraction(lambda_interval[0])
    return Fraction(C) ** 2 * (1 - 1 / lo) / (2**alpha * Fraction(D) ** 2)


def evaluate_rhs_split(
    n: int,
    delta: int,
    alpha: int,
    lambda_interval,
    C: Fraction,
    D: Fraction,
    schedule: EpsilonSchedule | None = None,
) -> RhsSplit:
    lo, hi = (Fraction(x) for x in lambda_interval)
    if lo <= 1:
        raise NotApplicableError("the split needs a growth rate above 1")
    eps = (schedule or EpsilonSchedule(delta))(n)
    # lambda enters the head with a negative exponent: lo rounds it up
    head = 2 * n * (1 + Fraction(delta, n)) ** alpha / lo ** (eps - delta)
    tail = 2 * hi**delta * eps * Fraction(delta + eps, n) ** alpha
    return RhsSplit(n, eps, lhs_constant(alpha, (lo, hi), C, D), head, tail)


def contradiction_search(
    alpha: int,
    delta: int,
    lambda_interval,
    C: Fraction,
    D: Fraction,
    ladder: Sequence[int] = LADDER,
) -> RhsSplit | None:
    """First ladder point where head and tail together fall below the constant."""
    for n in ladder:
        s = evaluate_rhs_split(n, delta, alpha, lambda_interval, C, D)
        if s.contradiction:
            return s
    return None


# ---------------------------------------------------------------- purely exponential growth


@dataclass(frozen=True)
class PureExponentialReport:
    lambda_interval: tuple[Fraction, Fraction]
    D_running: tuple[Fraction, ...]  # running maximum up to each radius
    window: int
    verdict: str  # verified-on-range | fails-on-range | inconclusive
    D_limit: Fraction | None = None  # geometric extrapolation of the running maximum

    @property
    def D_ball(self) -> Fraction:
        return self.D_running[-1]

    def to_dict(self) -> dict:
        return {
            "lambda_interval": [str(x) for x in self.lambda_interval],
            "D_ball": float(self.D_ball),
            "D_ball_exact": str(self.D_ball),
            "D_limit": None if self.D_limit is None else float(self.D_limit),
            "window": self.window,
            "verdict": self.verdict,
        }


def verify_purely_exponential(table: GrowthTable, lambda_interval) -> PureExponentialReport:
    """Smallest ``D`` with ``lambda**n / D <= B(n) <= D * lambda**n`` on the table, and a verdict.

    Over the last ``w = ceil(R/3)`` radii the running maximum ``D_R`` is
    verified when it is stable to 1e-6 relative, or when its increments
    decay at least geometrically (``D_R - D_{R-w} <= (D_{R-w} - D_{R-2w}) / 2``).
    It fails when it increases strictly at every step of the window.
    """
    R = table.radius
    if R < 2:
        raise GrowthLabError("table radius must be at least 2")
    lo, hi = (Fraction(x) for x in lambda_interval)
    running, best = [], Fraction(0)
    for n, b in enumerate(table.ball_counts):
        best = max(best, Fraction(b) / lo**n, hi**n / Fraction(b))
        running.append(best)
    w = -(-R // 3)
    last = running[R - w :]
    d_r, d_w = running[R], running[R - w]
    increasing = all(y > x for x, y in zip(last, last[1:]))
    limit = None
    verdict = "inconclusive"
    if lo > 1 and d_r - d_w <= STABILITY * d_r:
        verdict, limit = "verified-on-range", d_r
    elif lo > 1 and R - 2 * w >= 0:
        g1 = d_w - running[R - 2 * w]
        g2 = d_r - d_w
        if g1 > 0 and 2 * g2 <= g1:
            verdict = "verified-on-range"
            ratio = g2 / g1
            limit = d_r + g2 * ratio / (1 - ratio) if ratio < 1 else None
    if verdict == "inconclusive" and increasing:
        verdict = "fails-on-range"
    if verdict == "verified-on-range":
        D = running[R]
        assert all(lo**n <= D * b and b <= D * hi**n for n, b in enumerate(table.ball_counts))
    return PureExponentialReport((lo, hi), tuple(running), w, verdict, limit)


# ---------------------------------------------------------------- end to end


@dataclass
class TheoremReport:
    group: str
    radius: int
    delta: int | None
    verdict: str = "inconclusive"
    growth: GrowthTable | None = None
    series: RationalGrowthFunction | None = None
    asymptotics: GrowthAsymptotics | None = None
    lemma_checks: list[ConvolutionCheck] = field(default_factory=list)
    fiber_reports: list[FiberReport] = field(default_factory=list)
    ball_bounds: BallBoundsCheck | None = None
    ball_bounds_status: str = "not-run"
    rearranged_lhs: Fraction | None = None
    split_terms: list[RhsSplit] = field(default_factory=list)
    contradiction: RhsSplit | None = None  # under the hypothetical alpha = 1
    alpha0_tail_nonvanishing: bool | None = None
    pure_exponential: PureExponentialReport | None = None
    errors: list[dict] = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def lemma_ok(self) -> bool:
        return all(c.holds for c in self.lemma_checks)

    @property
    def fibers_ok(self) -> bool:
        return all(f.ok for f in self.fiber_reports)

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict == "verified-on-range" else 1

    def to_dict(self) -> dict:
        a = self.asymptotics
        return {
            "schema": REPORT_SCHEMA,
            "group": self.group,
            "radius": self.radius,
            "delta": self.delta,
            "verdict": self.verdict,
            "sphere": None if self.growth is None else list(self.growth.sphere_counts),
            "ball": None if self.growth is None else list(self.growth.ball_counts),
            "series": None if self.series is None else self.series.to_dict(),
            "asymptotics": None if a is None else a.to_dict(),
            "lemma": {
                "checked": len(self.lemma_checks),
                "violations": [[c.n, c.m] for c in self.lemma_checks if not c.holds],
            },
            "fibers": {
                "checked": len(self.fiber_reports),
                "violations": [[f.n, f.m] for f in self.fiber_reports if not f.ok],
                "max_fiber": max((f.max_fiber for f in self.fiber_reports), default=0),
                "centers_ok": all(f.center_ok is not False for f in self.fiber_reports),
            },
            "ball_bounds": self.ball_bounds_status,
            "rearranged_lhs": None if self.rearranged_lhs is None else float(self.rearranged_lhs),
            "split_terms": [s.to_dict() for s in self.split_terms],
            "contradiction_if_alpha_1": None if self.contradiction is None else self.contradiction.to_dict(),
            "alpha0_tail_nonvanishing": self.alpha0_tail_nonvanishing,
            "pure_exponential": None if self.pure_exponential is None else self.pure_exponential.to_dict(),
            "errors": self.errors,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        a = self.asymptotics
        lines = [f"group            {self.group}", f"radius           {self.radius}", f"delta            {self.delta}"]
        if self.series is not None:
            lines.append(f"growth function  {self.series}")
        if a is not None:
            lines.append(f"lambda           [{float(a.lambda_lo):.12g}, {float(a.lambda_hi):.12g}]")
            lines.append(f"alpha            {a.alpha}")
            lines.append(f"C_hat, D_hat     {float(a.C_hat):.9g}, {float(a.D_hat):.9g}")
            if a.warning:
                lines.append(f"warning          {a.warning}")
        lines.append(f"lemma checks     {len(self.lemma_checks)} ({'ok' if self.lemma_ok else 'VIOLATED'})")
        lines.append(f"fiber checks     {len(self.fiber_reports)} ({'ok' if self.fibers_ok else 'VIOLATED'})")
        lines.append(f"ball bounds      {self.ball_bounds_status}")
        if self.rearranged_lhs is not None:
            lines.append(f"ineq lhs const   {float(self.rearranged_lhs):.9g}")
        if self.contradiction is not None:
            c = self.contradiction
            lines.append(f"alpha=1 split    head+tail < const at n={c.n}")
        pe = self.pure_exponential
        if pe is not None:
            lines.append(f"D_ball           {float(pe.D_ball):.12g}")
        for e in self.errors:
            lines.append(f"error [{e['stage']}] {e['error']}")
        lines.append(f"verdict          {self.verdict}")
        return "\n".join(lines) + "\n"


def run_theorem_report(
    p: GroupPresentation,
    R: int,
    delta_override: int | None = None,
    budget_mb: int | None = None,
    tolerance: Fraction = DEFAULT_TOLERANCE,
    fiber_limit: int = 4,
) -> TheoremReport:
    """Run every stage; a failing stage is recorded and later stages that need it are skipped."""
    delta = delta_override if delta_override is not None else p.delta
    rep = TheoremReport(p.name, R, delta)

    def stage(name, fn):
        t0 = time.perf_counter()
        try:
            return fn()
        except GrowthLabError as exc:
            rep.errors.append({"stage": name, "error": f"{type(exc).__name__}: {exc}"})
            return None
        finally:
            rep.timings[name] = round(time.perf_counter() - t0, 3)

    rep.growth = stage("growth", lambda: enumerate_growth(p, R, store_elements=True, budget_mb=budget_mb))
    table = rep.growth
    if table is None:
        return rep
    rep.series = stage("series", lambda: fit_rational(SeriesCoefficients.spherical(table)))
    if rep.series is not None:
        rep.asymptotics = stage("asymptotics", lambda: extract_asymptotics(rep.series, table, tolerance))
    if delta is not None:
        rep.lemma_checks = stage("lemma", lambda: lemma_sweep(table, delta)) or []
        rep.fiber_reports = stage("fibers", lambda: fiber_sweep(p, table, delta, fiber_limit)) or []
    else:
        rep.errors.append({"stage": "lemma", "error": "no delta given"})
    a = rep.asymptotics
    if a is None:
        return rep
    if a.lambda_lo > 1:
        bb = stage("ball_bounds", lambda: check_ball_bounds(table, a))
        rep.ball_bounds = bb
        rep.ball_bounds_status = "error" if bb is None else ("ok" if bb.ok else "violated")
        if delta is not None:
            rep.rearranged_lhs = lhs_constant(a.alpha, a.lambda_interval, a.C_hat, a.D_hat)
            rep.split_terms = [
                evaluate_rhs_split(n, delta, a.alpha, a.lambda_interval, a.C_hat, a.D_hat) for n in LADDER
            ]
            rep.contradiction = contradiction_search(1, delta, a.lambda_interval, a.C_hat, a.D_hat)
            tails0 = [
                evaluate_rhs_split(n, delta, 0, a.lambda_interval, a.C_hat, a.D_hat).tail_bound for n in LADDER
            ]
            rep.alpha0_tail_nonvanishing = all(t >= 4 * delta for t in tails0) and tails0 == sorted(tails0)
    else:
        rep.ball_bounds_status = "not-applicable"
    rep.pure_exponential = stage("pure_exponential", lambda: verify_purely_exponential(table, a.lambda_interval))

    pe = rep.pure_exponential
    checks_ok = (
        not rep.errors
        and rep.lemma_ok
        and rep.fibers_ok
        and rep.ball_bounds_status == "ok"
        and rep.contradiction is not None
    )
    if pe is None:
        rep.verdict = "inconclusive"
    elif pe.verdict == "verified-on-range":
        rep.verdict = "verified-on-range" if (checks_ok and a.alpha == 0) else "inconclusive"
    else:
        rep.verdict = pe.verdict
    if not (rep.lemma_ok and rep.fibers_ok) or rep.ball_bounds_status == "violated":
        rep.verdict = "fails-on-range"
    return rep
