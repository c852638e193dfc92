"""Acceptance criteria, one test each, with a pass/fail line per criterion.

The lines are printed in the terminal summary (see ``conftest.py``).
"""

import time
from fractions import Fraction

import pytest

from growthlab.asymptotics import extract_asymptotics
from growthlab.catalog import load_group
from growthlab.cayley import enumerate_growth
from growthlab.errors import GrowthLabError
from growthlab.series import RationalGrowthFunction, SeriesCoefficients, _normalize, _try_fit, fit_rational
from growthlab.thinness import estimate_delta
from growthlab import polynomials as P
from growthlab.verify import (
    check_ball_bounds,
    contradiction_search,
    evaluate_rhs_split,
    fiber_sweep,
    lemma_sweep,
    lhs_constant,
    run_theorem_report,
)
from growthlab.words import free_reduce

from oracles import naive_sphere_counts

RESULTS = {}
TITLES = {
    "1": "F2 growth table R=12 (naive n<=6, closed form n<=12, < 60 s)",
    "2": "rational fits: F2 from n<=8 predicts 9..12; C2*C3 held out",
    "3": "asymptotics: F2 lambda=3, C=D=4/3; C2*C3 lambda^2=2; Z2 alpha=1",
    "4": "convolution and fiber sweeps, zero violations (< 2 min)",
    "5": "ball bounds strict on range for F2 and C2*C3",
    "6": "verdicts: f2, c2c3 verified; z, z2 fail; F2 D_ball -> 2",
    "7": "contradiction for alpha=1, non-vanishing tail for alpha=0",
    "8": "delta estimation: F2 B(3) gives 0; Z2 nondecreasing R=2..4",
    "9a": "surface group BFS to R=8 within budget",
    "9b": "surface group order<=4 fit on n<=6 predicts n=7,8",
}


@pytest.fixture
def criterion(request):
    key = request.node.name.split("_")[1]
    state = {"detail": ""}
    yield state
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    RESULTS[key] = (not failed, state["detail"])


@pytest.fixture(scope="module")
def surface_table():
    t0 = time.perf_counter()
    table = enumerate_growth(load_group("surface2"), 8, budget_mb=4096)
    return table, time.perf_counter() - t0


def fitted(key, radius):
    t = enumerate_growth(load_group(key), radius)
    r = fit_rational(SeriesCoefficients.spherical(t))
    return t, r, extract_asymptotics(r, t)


def test_1_f2_growth_table(criterion):
    t0 = time.perf_counter()
    p = load_group("f2")
    t = enumerate_growth(p, 12)
    naive = naive_sphere_counts(p, 6, lambda w: free_reduce(w, p.alphabet) == ())
    elapsed = time.perf_counter() - t0
    criterion["detail"] = f"{elapsed:.1f} s"
    assert naive == list(t.sphere_counts[:7])
    assert all(t.sphere(n) == 4 * 3 ** (n - 1) for n in range(1, 13))
    assert all(t.ball(n) == 2 * 3**n - 1 for n in range(13))
    assert elapsed < 60


def test_2_rational_fits(criterion):
    t = enumerate_growth(load_group("f2"), 12)
    r = fit_rational(SeriesCoefficients.spherical(t), train=9)
    assert (r.numerator, r.denominator) == ((1, 1), (1, -3))
    assert P.degree(P.poly_gcd(r.numerator, r.denominator)) == 0
    assert r.train_window == (0, 8) and r.verified_through == 12
    assert r.expand(13)[9:] == list(t.sphere_counts[9:])
    _, c, _ = fitted("c2c3", 14)
    assert (c.numerator, c.denominator) == ((1, 3, 2), (1, 0, -2))
    assert c.verified_through == 14 and c.train_window[1] < 14
    criterion["detail"] = f"{r}; {c}"


def test_3_asymptotics(criterion):
    _, _, a = fitted("f2", 12)
    assert a.lambda_lo <= 3 <= a.lambda_hi and a.lambda_hi - a.lambda_lo <= Fraction(1, 10**9)
    assert a.alpha == 0 and a.C_hat == a.D_hat == Fraction(4, 3)
    _, r, c = fitted("c2c3", 14)
    assert r.denominator == (1, 0, -2) and c.lambda_poly == (-2, 0, 1)
    assert c.lambda_lo**2 <= 2 <= c.lambda_hi**2 and c.alpha == 0
    _, _, z = fitted("z2", 40)
    assert z.alpha == 1
    criterion["detail"] = f"C2*C3 lambda in [{float(c.lambda_lo):.10f}, {float(c.lambda_hi):.10f}]"


def test_4_lemma_and_fiber_sweeps(criterion, surface_table):
    surface, bfs_time = surface_table
    t0 = time.perf_counter()
    lemma_total = fiber_total = 0
    for key in ("f2", "c2c3", "z", "surface2"):
        p = load_group(key)
        table = surface if key == "surface2" else enumerate_growth(p, 12, store_elements=True)
        checks = lemma_sweep(table, p.delta)
        assert checks and all(c.holds for c in checks), key
        reports = fiber_sweep(p, table, p.delta, 4)
        assert len(reports) == 25, key
        assert all(r.ok and r.ell_range_ok for r in reports), key
        lemma_total += len(checks)
        fiber_total += sum(int(r.sizes.size) for r in reports)
    elapsed = time.perf_counter() - t0 + bfs_time
    criterion["detail"] = f"{lemma_total} inequalities, {fiber_total} fibers, {elapsed:.0f} s"
    assert elapsed < 120


def test_5_ball_bounds(criterion):
    t, _, a = fitted("f2", 12)
    check = check_ball_bounds(t, a)
    assert check.ok and check.C == Fraction(4, 3) and check.D * 3 / 2 == 2
    assert all(Fraction(4, 3) * 3**n < t.ball(n) < 2 * 3**n for n in range(1, 13))
    t, _, a = fitted("c2c3", 14)
    assert check_ball_bounds(t, a).ok
    criterion["detail"] = "strict on n = 1..12 and 1..14"


def test_6_verdicts(criterion):
    verdicts = {key: run_theorem_report(load_group(key), R) for key, R in (("f2", 12), ("c2c3", 14), ("z", 20), ("z2", 40))}
    assert verdicts["f2"].verdict == "verified-on-range"
    assert verdicts["c2c3"].verdict == "verified-on-range"
    assert verdicts["z"].verdict == "fails-on-range"
    assert verdicts["z2"].verdict == "fails-on-range"
    pe = verdicts["f2"].pure_exponential
    assert abs(pe.D_limit - 2) <= Fraction(1, 10**6)
    assert verdicts["c2c3"].pure_exponential.D_ball < 10
    criterion["detail"] = f"F2 D_ball = {float(pe.D_ball):.9f}, limit {float(pe.D_limit):.9f}"


def test_7_contradiction_engine(criterion):
    _, _, a = fitted("f2", 12)
    hit = contradiction_search(1, 1, a.lambda_interval, a.C_hat, a.D_hat)
    assert hit is not None and hit.n <= 10**9
    lo = a.lambda_lo
    assert hit.lhs_const == a.C_hat**2 * (lo - 1) / (2 * a.D_hat**2 * lo)
    assert hit.head_bound + hit.tail_bound < lhs_constant(1, a.lambda_interval, a.C_hat, a.D_hat)
    tails = [evaluate_rhs_split(10**k, 1, 0, a.lambda_interval, a.C_hat, a.D_hat).tail_bound for k in range(1, 10)]
    assert min(tails) >= 6 and tails == sorted(tails)
    criterion["detail"] = f"alpha=1 contradiction at n={hit.n}; alpha=0 tail >= {float(min(tails)):.0f}"


def test_8_delta_estimation(criterion):
    f2 = estimate_delta(load_group("f2"), 3)
    assert f2.exhaustive and f2.delta_hat == 0
    z2 = [estimate_delta(load_group("z2"), R).delta_hat for R in (2, 3, 4)]
    assert z2 == sorted(z2)
    criterion["detail"] = f"F2 {f2.triangles_examined} triangles -> 0; Z2 {z2}"


SURFACE_SPHERES = [1, 8, 56, 392, 2736, 19096, 133288, 930328, 6493536]


def test_9a_surface_bfs(criterion, surface_table):
    table, elapsed = surface_table
    assert table.radius == 8
    assert list(table.sphere_counts) == SURFACE_SPHERES
    criterion["detail"] = f"{elapsed:.1f} s, {table.ball(8)} elements"


def test_9b_surface_fit(criterion, surface_table):
    """Search every fit of order <= 4 that the coefficients n <= 6 determine."""
    table, _ = surface_table
    c = list(table.sphere_counts)
    assert c == SURFACE_SPHERES
    predictions = {}
    for d in range(5):
        for m in range(0, 7 - d):
            if 7 - (m + 1) < d:  # fewer equations than unknowns: not determined
                continue
            fit = _try_fit(c[:7], d, m)
            if fit is None:
                continue
            num, den = fit
            g = P.poly_gcd(num, den)
            normalized = _normalize(P.exact_div(num, g), P.exact_div(den, g))
            if normalized is None:
                continue
            r = RationalGrowthFunction(*normalized)
            predictions[(d, m)] = tuple(r.expand(9)[7:])
    try:
        fit_rational(SeriesCoefficients("spherical", c), max_order=4, train=7)
        library = "fit_rational accepted"
    except GrowthLabError as exc:
        library = f"fit_rational: {type(exc).__name__}"
    good = [k for k, v in predictions.items() if v == (c[7], c[8])]
    closest = min(predictions.items(), key=lambda kv: abs(kv[1][0] - c[7]), default=None)
    criterion["detail"] = (
        f"{len(predictions)} determined fits, none predict {c[7]}, {c[8]}; "
        f"closest {closest[0]} -> {closest[1]}; {library}"
        if not good
        else f"fits {good}"
    )
    assert good
