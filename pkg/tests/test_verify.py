from fractions import Fraction

import pytest

from growthlab.asymptotics import extract_asymptotics
from growthlab.catalog import load_group
from growthlab.cayley import counts_table, enumerate_growth
from growthlab.errors import MissingElementsError, NotApplicableError, RadiusTooSmallError
from growthlab.series import SeriesCoefficients, fit_rational
from growthlab.verify import (
    LADDER,
    EpsilonSchedule,
    ball_bounds,
    center_vertex,
    check_ball_bounds,
    check_fiber_bounds,
    check_lemma_inequality,
    contradiction_search,
    epsilon_default,
    evaluate_rhs_split,
    fiber_sweep,
    icbrt,
    lemma_sweep,
    lhs_constant,
    run_theorem_report,
    verify_purely_exponential,
)

from conftest import table_for


def fitted(key, radius):
    t = table_for(key, radius, False)
    return t, extract_asymptotics(fit_rational(SeriesCoefficients.spherical(t)), t)


# ---------------------------------------------------------------- convolution inequality


def test_lemma_examples():
    c = check_lemma_inequality(table_for("f2", 3), 1, 1, 1)
    assert (c.lhs, c.rhs, c.holds) == (16, 145, True)
    c = check_lemma_inequality(table_for("z", 4), 1, 2, 2)
    assert (c.lhs, c.rhs, c.holds) == (4, 47, True)
    c = check_lemma_inequality(table_for("c2c3", 2), 2, 0, 0)
    assert c.lhs == 1 and c.rhs >= 1 and c.holds


def test_lemma_radius_error():
    with pytest.raises(RadiusTooSmallError) as info:
        check_lemma_inequality(table_for("z", 3), 1, 2, 2)
    assert info.value.required == 4


@pytest.mark.parametrize("key, radius", [("f2", 10), ("c2c3", 12), ("z", 20), ("z2", 16), ("surface2", 6)])
def test_lemma_sweep_has_no_violations(key, radius):
    p = load_group(key)
    checks = lemma_sweep(table_for(key, radius, False), p.delta)
    assert checks and all(c.holds for c in checks)
    covered = {(c.n, c.m) for c in checks}
    # everything admissible under the stricter radius rule is covered
    for n in range(radius + 1):
        for m in range(radius + 1):
            if n + m + p.delta + -(-(n + m) // 2) <= radius:
                assert (n, m) in covered


# ---------------------------------------------------------------- fibers


def test_fiber_example_f2(f2):
    rep = check_fiber_bounds(f2, table_for("f2", 3), 1, 1, 1)
    w = {f2.format(x.g): x for x in rep.witnesses()}
    assert w["a b"].fiber_size == 1 and w["a b"].bound == 5
    assert w[""].fiber_size == 4 and w[""].ell == 0
    assert rep.ok and rep.center_ok


def test_fiber_identity_factor(c2c3):
    t = table_for("c2c3", 6)
    rep = check_fiber_bounds(c2c3, t, 2, 0, 3)
    assert rep.max_fiber == 1
    assert all(x.N == 2 and x.bound == t.ball(2) for x in rep.witnesses())


def test_fiber_c2c3_two_two(c2c3):
    rep = check_fiber_bounds(c2c3, table_for("c2c3", 4), 1, 2, 2)
    assert rep.pairs == 16
    assert rep.ok and rep.ell_range_ok and rep.center_ok
    assert set(rep.ells) <= set(range(0, 5))


def test_fiber_needs_elements(f2):
    with pytest.raises(MissingElementsError):
        check_fiber_bounds(f2, enumerate_growth(f2, 3), 1, 1, 1)


def test_center_vertex_tie_break():
    g = (0, 2, 0, 2)
    assert center_vertex(g, 2, 2) == (0, 2)
    assert center_vertex(g[:3], 2, 2) == (0,)  # (3 + 0) / 2 rounds to the shorter prefix
    assert center_vertex(g, 4, 0) == g


@pytest.mark.parametrize("key, radius", [("f2", 8), ("c2c3", 9), ("z", 9), ("z2", 10)])
def test_fiber_sweep(key, radius):
    p = load_group(key)
    reports = fiber_sweep(p, table_for(key, radius), p.delta, 4)
    assert {(r.n, r.m) for r in reports} == {(n, m) for n in range(5) for m in range(5)}
    for r in reports:
        assert r.ok and r.ell_range_ok
        assert int(r.sizes.sum()) == r.pairs
        if key != "z2":
            assert r.center_ok is not False


def test_flat_plane_breaks_center_containment(z2):
    # the fiber bound holds, but no tripod center works: the plane is not hyperbolic
    rep = check_fiber_bounds(z2, table_for("z2", 10), z2.delta, 2, 2)
    assert rep.ok and rep.center_ok is False


def test_surface_fibers_small(surface):
    reports = fiber_sweep(surface, table_for("surface2", 5), surface.delta, 2)
    assert reports and all(r.ok and r.center_ok for r in reports)


# ---------------------------------------------------------------- ball bounds


def test_f2_ball_bounds():
    t, a = fitted("f2", 12)
    check = check_ball_bounds(t, a)
    assert check.ok
    for n in range(1, 13):
        lower, upper = ball_bounds(n, a)
        assert lower == Fraction(4, 3) * 3**n
        assert upper == 2 * 3**n
        assert lower < 2 * 3**n - 1 < upper


def test_c2c3_ball_bounds():
    t, a = fitted("c2c3", 14)
    assert check_ball_bounds(t, a).ok


def test_ball_bounds_not_applicable():
    t, a = fitted("z", 10)
    with pytest.raises(NotApplicableError):
        check_ball_bounds(t, a)


# ---------------------------------------------------------------- epsilon schedule and split


@pytest.mark.parametrize("n, delta, eps", [(1, 1, 3), (1000, 1, 12), (7, 2, 5), (8, 1, 4), (999, 1, 11)])
def test_epsilon_examples(n, delta, eps):
    assert epsilon_default(n, delta) == eps


def test_icbrt_exact():
    for r in (0, 1, 2, 10, 999, 10**6, 10**12 + 3):
        assert icbrt(r**3) == r
        assert icbrt(r**3 + 3 * r * r + 3 * r) == r
    with pytest.raises(ValueError):
        icbrt(-1)


@pytest.mark.parametrize("delta", [1, 2])
@pytest.mark.parametrize("alpha", [0, 1, 2])
@pytest.mark.parametrize("lam", [Fraction(3, 2), Fraction(2), Fraction(3)])
def test_epsilon_ladder(delta, alpha, lam):
    eps = EpsilonSchedule(delta)
    values = [eps(n) for n in range(1, 2000)]
    assert min(values) >= 2 * delta and values == sorted(values)
    heads = [n * (1 + Fraction(delta, n)) ** alpha / lam ** eps(n) for n in (10**3, 10**6, 10**9)]
    assert heads[0] > heads[1] > heads[2]
    ratios = [Fraction(eps(n) ** 2, n) for n in LADDER]
    assert ratios[-1] < Fraction(1, 10**2) and ratios[-1] < ratios[2]


def test_head_bound_example():
    s = evaluate_rhs_split(1000, 1, 1, (3, 3), Fraction(4, 3), Fraction(4, 3))
    assert s.epsilon == 12
    assert s.head_bound == Fraction(2002, 3**11)
    assert Fraction(113, 10**4) < s.head_bound < Fraction(114, 10**4)


def test_tail_bound_decays_for_alpha_one():
    a = evaluate_rhs_split(10**3, 1, 1, (3, 3), Fraction(4, 3), Fraction(4, 3)).tail_bound
    b = evaluate_rhs_split(10**6, 1, 1, (3, 3), Fraction(4, 3), Fraction(4, 3)).tail_bound
    # 2 * 3 * eps * (1 + eps) / n with eps = 12 and 102
    assert a == Fraction(6 * 12 * 13, 10**3) and b == Fraction(6 * 102 * 103, 10**6)
    assert b < a / 10


def test_tail_bound_alpha_zero_does_not_vanish():
    tails = [evaluate_rhs_split(n, 1, 0, (3, 3), Fraction(4, 3), Fraction(4, 3)).tail_bound for n in LADDER]
    assert tails == [6 * epsilon_default(n, 1) for n in LADDER]
    assert tails == sorted(tails) and tails[0] > 0


def test_split_not_applicable():
    with pytest.raises(NotApplicableError):
        evaluate_rhs_split(10, 1, 0, (1, 1), 1, 1)


@pytest.mark.parametrize("key, radius", [("f2", 12), ("c2c3", 14)])
def test_contradiction_for_alpha_one(key, radius):
    _, a = fitted(key, radius)
    delta = load_group(key).delta
    hit = contradiction_search(1, delta, a.lambda_interval, a.C_hat, a.D_hat)
    assert hit is not None and hit.n <= 10**9
    assert hit.lhs_const == lhs_constant(1, a.lambda_interval, a.C_hat, a.D_hat)
    assert contradiction_search(0, delta, a.lambda_interval, a.C_hat, a.D_hat) is None


def test_lhs_constant_f2():
    assert lhs_constant(1, (3, 3), Fraction(4, 3), Fraction(4, 3)) == Fraction(1, 3)
    assert lhs_constant(0, (3, 3), Fraction(4, 3), Fraction(4, 3)) == Fraction(2, 3)


# ---------------------------------------------------------------- purely exponential growth


def test_f2_pure_exponential():
    t, a = fitted("f2", 12)
    pe = verify_purely_exponential(t, a.lambda_interval)
    assert pe.verdict == "verified-on-range"
    assert pe.D_ball == 2 - Fraction(1, 3**12)
    assert abs(pe.D_ball - 2) < Fraction(1, 10**5)
    assert pe.D_limit is not None and abs(pe.D_limit - 2) < Fraction(1, 10**6)


@pytest.mark.parametrize("key, radius", [("z", 20), ("z2", 40)])
def test_polynomial_growth_fails(key, radius):
    t, a = fitted(key, radius)
    assert verify_purely_exponential(t, a.lambda_interval).verdict == "fails-on-range"


def test_pure_exponential_inconclusive_on_noise():
    # B(n) = 3^n up to n = 5, then a jump: flat, then rising, with no geometric decay
    t = counts_table("x", [1, 2, 6, 18, 54, 162, 1944])
    assert verify_purely_exponential(t, (Fraction(3), Fraction(3))).verdict == "inconclusive"


# ---------------------------------------------------------------- end to end


@pytest.mark.parametrize("key, radius, verdict", [("f2", 12, "verified-on-range"), ("c2c3", 14, "verified-on-range"), ("z", 20, "fails-on-range"), ("z2", 40, "fails-on-range")])
def test_theorem_report(key, radius, verdict):
    rep = run_theorem_report(load_group(key), radius)
    assert rep.verdict == verdict
    assert rep.exit_code == (0 if verdict == "verified-on-range" else 1)
    d = rep.to_dict()
    assert d["verdict"] == verdict and d["schema"] == "growthlab.theorem-report/1"
    assert "verdict" in rep.to_text()
    if key == "z2":
        assert rep.asymptotics.alpha == 1
    if key in ("f2", "c2c3"):
        assert rep.asymptotics.alpha == 0 and rep.lemma_ok and rep.fibers_ok
        assert rep.contradiction is not None and rep.alpha0_tail_nonvanishing


def test_tolerance_does_not_change_verdicts():
    for key, radius in [("f2", 12), ("c2c3", 14)]:
        a = run_theorem_report(load_group(key), radius)
        b = run_theorem_report(load_group(key), radius, tolerance=Fraction(1, 10**12))
        assert a.verdict == b.verdict
