import itertools
import random
from functools import lru_cache
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weilpoly.crosscheck import brute_force_enum
from weilpoly.errors import NotPrimePower, NotWeil
from weilpoly.exactmath import Poly, QuadReal, real_roots, squarefree_decompose
from weilpoly.weil import (
    WeilCandidate,
    candidate_from_coeffs,
    check_prime_power,
    classify_real_roots,
    coefficient_bounds,
    expand,
    functional_eq_holds,
    h_plus_minus,
    has_real_root,
    is_weil,
    trace_poly,
)


def _desc(*co):
    return Poly.descending(co)


def _moduli(c):
    # roots of each squarefree factor are simple, so floats resolve them well
    out = []
    for factor, _ in squarefree_decompose(Poly.descending(expand(c))):
        if factor.degree > 0:
            out.extend(np.abs(np.roots([float(x) for x in factor.coeffs[::-1]])))
    return np.array(out)


# expansion ------------------------------------------------------------------------


def test_expand_examples():
    assert expand(WeilCandidate(2, 1, (3,))) == (1, 3, 2)
    assert expand(WeilCandidate(4, 2, (-4, 10))) == (1, -4, 10, -16, 16)
    lhs = Poly.descending(expand(WeilCandidate(2, 3, (0, -2, 0))))
    assert lhs == _desc(1, 0, -2) ** 2 * _desc(1, 0, 2)


def test_functional_equation_examples():
    assert functional_eq_holds((1, -4, 10, -16, 16), 4, 2)
    assert not functional_eq_holds((1, 1, 1, 1, 1), 2, 2)
    assert functional_eq_holds((1, 3, 2), 2, 1)


@given(
    q=st.sampled_from([2, 3, 4, 5, 7, 8, 9, 25]),
    a=st.lists(st.integers(-50, 50), min_size=1, max_size=6),
)
def test_expand_roundtrip(q, a):
    c = WeilCandidate(q, len(a), a)
    h = expand(c)
    assert functional_eq_holds(h, q, c.g)
    assert candidate_from_coeffs(Poly.descending(h), q) == c


def test_functional_equation_detects_perturbation():
    h = list(expand(WeilCandidate(3, 3, (1, 2, 3))))
    h[-2] += 1
    assert not functional_eq_holds(tuple(h), 3, 3)


def test_prime_power_validation():
    for q in (2, 4, 8, 9, 27, 49, 121, 2**31 - 1):
        check_prime_power(q)
    for q in (1, 6, 12, 100, 0, -4):
        with pytest.raises(NotPrimePower):
            WeilCandidate(q, 1, (0,))


# trace polynomial and h+/h- --------------------------------------------------------


def test_trace_poly_examples():
    for q in (2, 3, 4, 9):
        assert trace_poly(WeilCandidate(q, 2, (0, -2 * q))) == _desc(1, 0, -4 * q)
    assert trace_poly(WeilCandidate(2, 1, (3,))) == _desc(1, 3)
    assert trace_poly(WeilCandidate(2, 3, (0, 0, 0))) == _desc(1, 0, -6, 0)


def _compose_check(c):
    """x^g P(x + q/x) == h, as rational functions evaluated at a few points."""
    P = trace_poly(c)
    h = Poly.descending(expand(c))
    for x in (Fraction(1), Fraction(3, 2), Fraction(-7, 3), Fraction(11)):
        assert x ** c.g * P(x + Fraction(c.q) / x) == h(x)


@given(
    q=st.sampled_from([2, 3, 4, 5, 7, 9]),
    a=st.lists(st.integers(-30, 30), min_size=1, max_size=7),
)
def test_trace_poly_identity(q, a):
    _compose_check(WeilCandidate(q, len(a), a))


def test_h_plus_minus_examples():
    s2 = QuadReal(0, 1, 2)
    hp = h_plus_minus(WeilCandidate(2, 3, (0, 0, 0))).hplus
    assert list(hp.coeffs) == [-4 * s2, 18, -6 * s2, 1]
    hp = h_plus_minus(WeilCandidate(4, 1, (-4,))).hplus
    assert hp == _desc(1, -8)


def test_h_plus_minus_identity_grid():
    # exhaustive: g <= 3, |a_i| <= 5, q in {2, 3, 4, 5}
    for q in (2, 3, 4, 5):
        s2 = 2 * QuadReal(0, 1, q)
        for g in (1, 2, 3):
            for a in itertools.product(range(-5, 6), repeat=g):
                c = WeilCandidate(q, g, a)
                table = h_plus_minus(c, "table")
                P = trace_poly(c)
                assert table.hplus == P.compose_linear(1, -s2), c
                assert table.hminus == P.compose_linear(-1, s2) * (-1) ** g, c


@pytest.mark.parametrize("g", [4, 5])
def test_h_plus_minus_table_vs_trace_high_degree(g):
    rng = random.Random(g)
    for _ in range(300):
        q = rng.choice([2, 3, 4, 5, 7, 8, 9])
        c = WeilCandidate(q, g, [rng.randint(-40, 40) for _ in range(g)])
        assert h_plus_minus(c, "table") == h_plus_minus(c, "trace"), c


def test_h_plus_minus_root_sets():
    # h+ roots are 2 sqrt q - omega_i, h- roots 2 sqrt q + omega_i, omega_i = -(w + conj w)
    rng = random.Random(3)
    for _ in range(100):
        q = rng.choice([2, 3, 5, 9])
        g = rng.randint(1, 4)
        c = WeilCandidate(q, g, [rng.randint(-8, 8) for _ in range(g)])
        w = np.roots(np.array(expand(c), dtype=float))
        # pair each root with its partner q / w
        used, omegas = [False] * len(w), []
        for i in range(len(w)):
            if used[i]:
                continue
            used[i] = True
            j = min((k for k in range(len(w)) if not used[k]), key=lambda k: abs(w[k] - q / w[i]))
            used[j] = True
            omegas.append(-(w[i] + w[j]))
        hpm = h_plus_minus(c)
        sq = np.sqrt(q)
        for poly, sign in ((hpm.hplus, -1), (hpm.hminus, 1)):
            co = [float(x) if not isinstance(x, QuadReal) else float(x.a) + float(x.b) * sq
                  for x in poly.coeffs[::-1]]
            for om in omegas:
                assert abs(np.polyval(co, 2 * sq + sign * om)) < 1e-6 * (1 + np.max(np.abs(co)))


# membership ----------------------------------------------------------------------------


def test_is_weil_examples():
    assert is_weil(WeilCandidate(4, 2, (-4, 10)))
    assert not is_weil(WeilCandidate(2, 1, (3,)))
    c = WeilCandidate(2, 5, (0, -4, 0, 4, 0))
    assert is_weil(c)
    assert Poly.descending(expand(c)) == _desc(1, 0, -2) ** 2 * _desc(1, 0, 0, 0, 0, 0, 8)


def test_is_weil_routes_agree_on_grid():
    for q in (2, 3, 4, 5):
        for g in (1, 2, 3):
            for a in itertools.product(range(-5, 6), repeat=g):
                c = WeilCandidate(q, g, a)
                assert is_weil(c) == is_weil(c, "trace"), c


def test_members_have_root_modulus_sqrt_q():
    # float oracle, one direction only: members really have |w| = sqrt q
    for q in (2, 3, 4):
        for g in (1, 2, 3):
            for c in _members(q, g):
                assert np.allclose(_moduli(c), np.sqrt(q), atol=1e-3), c


def test_g1_membership_is_the_hasse_bound():
    for q in (2, 3, 4, 5, 7, 8, 9, 16, 25):
        for a in range(-12, 13):
            assert is_weil(WeilCandidate(q, 1, (a,))) == (a * a <= 4 * q)


# real roots and classification ----------------------------------------------------------


def test_has_real_root_examples():
    assert has_real_root(WeilCandidate(2, 3, (0, -2, 0)))
    assert not has_real_root(WeilCandidate(2, 3, (0, 0, 0)))
    assert not has_real_root(WeilCandidate(4, 2, (-4, 10)))
    with pytest.raises(NotWeil):
        has_real_root(WeilCandidate(2, 1, (3,)))


def test_classify_examples():
    cls = classify_real_roots(WeilCandidate(9, 3, (-18, 135, -540)))
    assert (cls.kind, cls.k, cls.l, cls.cofactor.g) == ("sqrt-factors", 0, 3, 0)
    cls = classify_real_roots(WeilCandidate(2, 4, (0, -4, 0, 8)))
    assert cls.kind == "x2-q-factor" and cls.m == 1
    assert cls.cofactor == WeilCandidate(2, 2, (0, 0))
    assert classify_real_roots(WeilCandidate(2, 3, (0, 0, 0))).kind == "none"
    with pytest.raises(NotWeil):
        classify_real_roots(WeilCandidate(2, 1, (3,)))


@lru_cache(maxsize=None)
def _members(q, g):
    # the trace-walk oracle lists every member without scanning a box
    return tuple(brute_force_enum(q, g))


@pytest.mark.parametrize("q,gmax", [(2, 3), (3, 3), (4, 3), (9, 2)])
def test_classification_properties(q, gmax):
    for g in range(1, gmax + 1):
        for c in _members(q, g):
            cls = classify_real_roots(c)
            assert cls.expand() == expand(c)
            assert (cls.kind != "none") == has_real_root(c)
            assert is_weil(cls.cofactor)
            assert not has_real_root(cls.cofactor)
            # real roots of a Weil polynomial have even multiplicity
            for factor, mult in squarefree_decompose(Poly.descending(expand(c))):
                if real_roots(factor):
                    assert mult % 2 == 0, c


def test_coefficient_bounds_contain_members():
    for q in (2, 3, 4):
        for g in (1, 2, 3):
            B = coefficient_bounds(q, g)
            for c in _members(q, g):
                assert all(abs(x) <= b for x, b in zip(c.a, B))
    assert coefficient_bounds(4, 2) == (8, 24)
