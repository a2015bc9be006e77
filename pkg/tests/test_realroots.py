import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weilpoly.errors import DeltaPositive, PreconditionViolated
from weilpoly.exactmath import Enclosure, Poly, QuadReal, count_real_roots_with_multiplicity, real_roots
from weilpoly.realroots import (
    DiamondInput,
    Mode,
    critical_point_profile,
    deg2_real_nonneg,
    deg3_real_nonneg,
    deg4_real_nonneg,
    deg5_monic_real_nonneg,
    diamond_all_real,
    ferrari_roots,
    hyperbolic_nonneg_exact,
    sign_mult_all_real,
    theta_cubic,
    theta_sorted,
)
from weilpoly.realroots.lowdeg import theta_position
from weilpoly.weil import WeilCandidate, h_plus_minus

S2 = QuadReal(0, 1, 2)
X = Poly([0, 1])


def sturm_nonneg(coeffs_desc):
    return hyperbolic_nonneg_exact(Poly(list(coeffs_desc)[::-1]), Mode.REAL_NONNEG)


# hyperbolic_nonneg_exact -----------------------------------------------------------


def test_exact_oracle_examples():
    f = Poly([0, 0, -6, 1])  # x^3 - 6x^2
    assert hyperbolic_nonneg_exact(f, Mode.REAL_NONNEG)
    assert not hyperbolic_nonneg_exact(f, Mode.REAL_POS)
    assert hyperbolic_nonneg_exact(Poly([2, -2 * S2, 1]), Mode.REAL_POS)


# diamond and SIGN/MULT -----------------------------------------------------------------


def test_diamond_examples():
    f = Poly([-3, 7, -5, 1])  # (x - 1)^2 (x - 3)
    assert diamond_all_real(DiamondInput(f, (1, Fraction(7, 3))), Mode.REAL)
    g = Poly([5, -3, 0, 1])
    assert not diamond_all_real(DiamondInput(g, (-1, 1)), Mode.REAL)
    h = Poly([0, 0, -6, 1])
    assert diamond_all_real(DiamondInput(h, (0, 4)), Mode.REAL)
    assert diamond_all_real(DiamondInput(h, (0, 4)), Mode.REAL_NONNEG)
    assert not diamond_all_real(DiamondInput(h, (0, 4)), Mode.REAL_POS)


def test_diamond_rejects_nonreal_derivative():
    f = Poly([0, 1, 0, 1])  # x^3 + x, f' = 3x^2 + 1
    with pytest.raises(PreconditionViolated):
        diamond_all_real(DiamondInput(f, (0, 0)))


def test_diamond_with_enclosure_betas_at_exact_zero():
    f = Poly.from_roots([1, 1, 4])
    betas = (Enclosure.exact(1, 64), Enclosure.exact(3, 64))
    assert diamond_all_real(DiamondInput(f, betas), Mode.REAL_POS)


def test_sign_mult_examples():
    assert sign_mult_all_real(Poly([-3, 7, -5, 1]))
    assert not sign_mult_all_real(Poly([5, -3, 0, 1]))
    prof = critical_point_profile(Poly([-3, 7, -5, 1]))
    assert prof.k == 2 and prof.sign_sequence() == [1, -1, 0, -1]


def _critical_betas(f):
    out = []
    for r in real_roots(f.derivative()):
        out.extend([r.hi if r.lo == r.hi else Enclosure(0, 0, 2)] * r.mult)
    return out


def _real_rooted_derivative_case(rng):
    deg = rng.randint(2, 8)
    crit = [Fraction(rng.randint(-8, 8), rng.randint(1, 2)) for _ in range(deg - 1)]
    df = Poly.from_roots(crit) * deg
    f = Poly([0] + [Fraction(c) / (i + 1) for i, c in enumerate(df.coeffs)])
    # choose the constant so that it sometimes hits a critical value exactly
    if rng.random() < 0.5:
        c = -f(rng.choice(crit))
    else:
        c = Fraction(rng.randint(-400, 400), rng.randint(1, 3))
    return f + c, sorted(crit)


def test_diamond_equals_sign_mult_on_constructed_cases():
    rng = random.Random(11)
    for _ in range(400):
        f, crit = _real_rooted_derivative_case(rng)
        for mode in Mode:
            d = diamond_all_real(DiamondInput(f, tuple(crit)), mode)
            s = sign_mult_all_real(f, mode)
            assert d == s == hyperbolic_nonneg_exact(f, mode)


# degree 2 and 3 ------------------------------------------------------------------


@pytest.mark.parametrize(
    "co,expected",
    [((1, -3, 2), True), ((1, 2, 1), False), ((1, -4 * S2, 8), True)],
)
def test_deg2_examples(co, expected):
    assert deg2_real_nonneg(*co) == expected


def test_deg3_examples():
    assert deg3_real_nonneg(1, -6, 11, -6)
    assert not deg3_real_nonneg(1, 0, 0, 1)
    # (x - sqrt2)^2 (x - 4 sqrt2) = x^3 - 6 sqrt2 x^2 + 18 x - 8 sqrt2
    assert deg3_real_nonneg(1, -6 * S2, 18, -8 * S2)
    assert sturm_nonneg([1, -6 * S2, 18, -8 * S2])
    # the listed middle coefficient 22 gives a polynomial with nonreal roots
    assert not deg3_real_nonneg(1, -6 * S2, 22, -8 * S2)
    assert not sturm_nonneg([1, -6 * S2, 22, -8 * S2])


def test_deg2_deg3_grid():
    r = range(-6, 7)
    for a2 in range(1, 7):
        for a1 in r:
            for a0 in r:
                assert deg2_real_nonneg(a2, a1, a0) == sturm_nonneg([a2, a1, a0])
    for a3 in (1, 2, 5):
        for a2 in r:
            for a1 in r:
                for a0 in r:
                    assert deg3_real_nonneg(a3, a2, a1, a0) == sturm_nonneg([a3, a2, a1, a0])


@given(st.lists(st.integers(0, 9), min_size=2, max_size=3), st.booleans())
def test_strict_variants(roots, strict):
    f = Poly.from_roots(roots)
    co = f.coeffs[::-1]
    pred = deg2_real_nonneg if len(roots) == 2 else deg3_real_nonneg
    mode = Mode.REAL_POS if strict else Mode.REAL_NONNEG
    assert pred(*co, strict) == hyperbolic_nonneg_exact(f, mode)


def test_paper_literal_signs_differ():
    # roots 1, 2: accepted with corrected signs, rejected with the printed ones
    assert deg2_real_nonneg(1, -3, 2)
    assert not deg2_real_nonneg(1, -3, 2, paper_literal=True)
    assert not deg3_real_nonneg(1, -6, 11, -6, paper_literal=True)
    assert not deg4_real_nonneg(1, -10, 35, -50, 24, paper_literal=True)


# the theta set ---------------------------------------------------------------------


def _depressed_cubic_roots(u2, u3):
    return [r for r in real_roots(Poly([u3, u2, 0, 1])) for _ in range(r.mult)]


@given(st.integers(-30, 30), st.integers(-30, 30))
def test_theta_cubic_roots_are_theta(r1, r2):
    # y^3 + u2 y + u3 with roots r1, r2, -(r1 + r2); theta = -u2 r^2 - 3 u3 r
    roots = [r1, r2, -(r1 + r2)]
    p = Poly.from_roots(roots)
    u2, u3 = p.coeffs[1], p.coeffs[0]
    cubic = theta_cubic(u2, u3)
    for r in roots:
        assert cubic(-u2 * r * r - 3 * u3 * r) == 0


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 4))
def test_theta_sorted_properties(r1, r2, den):
    roots = [Fraction(r1, den), Fraction(r2, den), -Fraction(r1 + r2, den)]
    p = Poly.from_roots(roots)
    u2, u3 = p.coeffs[1], p.coeffs[0]
    exact = sorted(-u2 * r * r - 3 * u3 * r for r in roots)
    res = theta_sorted(u2, u3)
    for enc, t in zip(res.thetas, exact):
        assert enc.contains(t)
    assert all(res.thetas[i].lower <= res.thetas[i + 1].upper for i in range(2))
    neg = theta_sorted(u2, -u3)
    for a, b in zip(res.thetas, neg.thetas):
        assert a.intersects(b)
    for k in (1, 2):
        other = theta_sorted(u2, u3, omega_power=k)
        assert all(a.intersects(b) for a, b in zip(res.thetas, other.thetas))
    assert theta_position(res.cubic, exact[0]) == (True, exact[0] <= exact[1])


def test_theta_degenerate_and_errors():
    res = theta_sorted(0, 0)
    assert all(t.lo == t.hi == 0 for t in res.thetas)
    res = theta_sorted(-3, 0)
    # y^3 - 3y: roots 0, +-sqrt3 give theta = 3 r^2 = 0, 9, 9
    cubic = theta_cubic(-3, 0)
    assert cubic == Poly([0, 81, -18, 1])
    assert res.theta1.contains(0) and res.theta2.contains(9) and res.thetas[2].contains(9)
    assert res.ties == (False, True)
    with pytest.raises(DeltaPositive):
        theta_sorted(3, 1)


# degree 4 ----------------------------------------------------------------------------


def test_deg4_examples():
    assert deg4_real_nonneg(1, -10, 35, -50, 24)
    assert not deg4_real_nonneg(1, 0, 0, 0, 1)


def test_deg4_hplus_of_nonmember():
    # (q, a) = (4, (-4, 10, -16, 16)): the trace polynomial has a complex pair
    c = WeilCandidate(4, 4, (-4, 10, -16, 16))
    hp = h_plus_minus(c, "table").hplus
    co = hp.coeffs[::-1]
    # h+(x) = P(x - 2 sqrt q); computed independently with a CAS
    assert tuple(co) == (1, -20, 138, -368, 256)
    assert co[1] == -4 - 8 * 2  # a1 - 8 sqrt q
    assert count_real_roots_with_multiplicity(hp, 0, None) == 2
    assert not deg4_real_nonneg(*co)
    assert not sturm_nonneg(co)
    alt = (1, -20, 114, -248, 168)
    assert deg4_real_nonneg(*alt) == sturm_nonneg(alt) is False


def test_deg4_random_against_sturm():
    rng = random.Random(5)
    for _ in range(1500):
        if rng.random() < 0.5:
            co = Poly.from_roots([rng.randint(0, 7) for _ in range(4)]).coeffs[::-1]
            co = [c + rng.choice([0, 0, 1, -1]) for c in co]
            co[0] = 1
        else:
            co = [rng.randint(1, 3)] + [rng.randint(-25, 25) for _ in range(4)]
        assert deg4_real_nonneg(*co) == sturm_nonneg(co), co


def test_deg4_unsorted_theta_can_be_wrong():
    rng = random.Random(9)
    wrong = 0
    for _ in range(400):
        co = list(Poly.from_roots([rng.randint(0, 6) for _ in range(4)]).coeffs[::-1])
        co[-1] += rng.choice([0, 1, -1, 2])
        if deg4_real_nonneg(*co, sort_theta=False) != sturm_nonneg(co):
            wrong += 1
    assert wrong > 0


# Ferrari and degree 5 ----------------------------------------------------------------


def test_ferrari_biquadratic_example():
    fd = ferrari_roots(Fraction(-5, 2), 0, Fraction(9, 4))
    # x^4 - 5x^2 + 9/4 = (x^2 - 9/2)(x^2 - 1/2)
    assert fd.all_real
    expected = [-Fraction(9, 2), -Fraction(1, 2), Fraction(1, 2), Fraction(9, 2)]
    for g, sq in zip(fd.gammas, expected):
        assert (g.lower * abs(g.lower) <= sq <= g.upper * abs(g.upper)) if sq > 0 else (
            -(g.upper**2) >= sq >= -(g.lower**2)
        )


def test_ferrari_zero():
    fd = ferrari_roots(0, 0, 0)
    assert fd.all_real and all(g.contains(0) for g in fd.gammas)


def test_ferrari_invariants():
    rng = random.Random(2)
    for _ in range(150):
        roots = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(4)]
        m = sum(roots) / 4
        roots = sorted(r - m for r in roots)
        Q = Poly.from_roots(roots)
        u2, u3, u4 = Q.coeffs[2] / 2, Q.coeffs[1] / 4, Q.coeffs[0]
        if u3 == 0:
            continue
        ref = None
        for branch in range(3):
            for signs in ((1, 1), (-1, 1)):
                fd = ferrari_roots(u2, u3, u4, c_branch=branch, sqrt_signs=signs)
                assert fd.v2 == -u2 * u2 / 3 - u4
                assert fd.v3 == Fraction(2, 3) * u2 * u4 - Fraction(2, 27) * u2**3 - 2 * u3 * u3
                assert all(g.contains(r) for g, r in zip(fd.gammas, roots))
                if ref is not None:
                    assert all(a.intersects(b) for a, b in zip(fd.gammas, ref))
                ref = fd.gammas


def test_deg5_examples():
    assert deg5_monic_real_nonneg(-15, 85, -225, 274, -120)
    assert not deg5_monic_real_nonneg(0, 0, 0, 0, 1)
    c = WeilCandidate(2, 5, (0, -4, 0, 4, 0))
    hm = h_plus_minus(c).hminus
    co = hm.coeffs[::-1]
    assert deg5_monic_real_nonneg(*co[1:])
    assert sturm_nonneg(co)


def test_deg5_random_against_sturm():
    rng = random.Random(8)
    for _ in range(800):
        if rng.random() < 0.6:
            co = Poly.from_roots([rng.randint(0, 6) for _ in range(5)]).coeffs[::-1]
            co = [c + rng.choice([0, 0, 0, 1, -1]) for c in co]
            co[0] = 1
        else:
            co = [1] + [rng.randint(-40, 40) for _ in range(5)]
        assert deg5_monic_real_nonneg(*co[1:]) == sturm_nonneg(co), co


def test_interlacing_on_real_rooted_quintics():
    rng = random.Random(4)
    for _ in range(200):
        roots = sorted(Fraction(rng.randint(-20, 20), rng.randint(1, 3)) for _ in range(5))
        f = Poly.from_roots(roots)
        crit = [r for r in real_roots(f.derivative()) for _ in range(r.mult)]
        assert len(crit) == 4
        for i, r in enumerate(crit):
            assert roots[i] <= r.hi and r.lo < roots[i + 1] or r.lo == roots[i + 1]
