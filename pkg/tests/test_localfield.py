import itertools
import random
from fractions import Fraction
from math import inf

import pytest

import picard.localfield as lf
from picard.exact import poly_from_ints


def test_gf_field_axioms_random():
    rng = random.Random(5)
    for p, k in [(5, 1), (5, 2), (7, 3), (2, 4), (3, 2)]:
        F = lf.GF(p, k)
        for _ in range(50):
            a = tuple(rng.randrange(p) for _ in range(k))
            b = tuple(rng.randrange(p) for _ in range(k))
            c = tuple(rng.randrange(p) for _ in range(k))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            if not F.is_zero(a):
                assert F.mul(a, F.inv(a)) == F.one


def test_gf_multiplicative_order():
    F = lf.GF(5, 2)
    # F_25^* is cyclic of order 24; x^24 = 1 for all nonzero x
    for a in F.elements():
        if not F.is_zero(a):
            assert F.pow(a, 24) == F.one


def test_residue_roots_with_multiplicity():
    F = lf.GF(7, 1)
    # (x-1)^2 (x-3) over F_7
    one, three = F.from_int(1), F.from_int(3)
    poly = lf.gmul(F, [F.neg(one), F.one], lf.gmul(F, [F.neg(one), F.one], [F.neg(three), F.one]))
    roots, missing = lf.residue_roots(F, poly)
    assert missing == 0
    assert sorted((r[0], m) for r, m in roots) == [(1, 2), (3, 1)]


def test_residue_roots_detects_missing_degree():
    F = lf.GF(3, 1)
    # x^2 + 1 irreducible over F_3
    _, missing = lf.residue_roots(F, [F.one, F.zero, F.one])
    assert missing == 2


def test_unramified_ring_inverse_and_zeta():
    U = lf.UnramifiedRing(7, 2, 10)
    rng = random.Random(3)
    for _ in range(20):
        a = tuple(rng.randrange(U.mod) for _ in range(2))
        if U.val(a) == 0:
            assert U.mul(a, U.inv_unit(a)) == U.one
    for e in (2, 3, 4, 6, 8, 12):
        if (7**2 - 1) % e == 0:
            z = U.zeta(e)
            assert lf._upow(U, z, e) == U.one
            for d in range(1, e):
                assert lf._upow(U, z, d) != U.one


def test_tame_ring_uniformizer_laws():
    for c in (1, -1):
        R = lf.TameRing(lf.TameExtension(5, 4, c), 1, 8)
        pi = R.pi_power(1)
        p4 = R.mul(R.mul(pi, pi), R.mul(pi, pi))
        assert p4 == R.from_int(c * 5)
        assert R.val(pi) == 1
        assert R.val(R.from_int(5)) == 4
        x = R.add(R.from_int(2), R.mul(pi, pi))
        assert R.mul(x, R.inv_unit(x)) == R.one
        # dividing by pi^3 recovers x up to the 3 pi-digits the division loses
        back = R.div_pi(R.mul(x, R.pi_power(3)), 3)
        assert R.val(R.sub(back, x)) >= R.cap - 3


def test_galois_map_is_ring_automorphism():
    R = lf.TameRing(lf.TameExtension(5, 4, 1), 1, 6)
    zeta = R.zeta(4)
    rng = random.Random(11)
    for _ in range(20):
        a = tuple((rng.randrange(R.U.mod),) for _ in range(4))
        b = tuple((rng.randrange(R.U.mod),) for _ in range(4))
        lhs = R.galois_map(R.mul(a, b), zeta, 1)
        rhs = R.mul(R.galois_map(a, zeta, 1), R.galois_map(b, zeta, 1))
        assert lhs == rhs


def test_newton_polygon_pinned():
    # all unit roots
    np1 = lf.newton_polygon(poly_from_ints([1, 0, 14, 72, -41]), 5)
    assert np1.slopes == ((Fraction(0), 4),)
    # Eisenstein: slope -1/4
    np2 = lf.newton_polygon(poly_from_ints([1, 0, 0, 0, -5]), 5)
    assert np2.slopes == ((Fraction(-1, 4), 4),)
    # zero root plus three unit roots (oracle: lifting mod 3^20 over e = 3
    # shows the cubic factor has three valuation-0 roots)
    np3 = lf.newton_polygon(poly_from_ints([1, -3, -24, -1, 0]), 3)
    assert np3.slopes == ((-inf, 1), (Fraction(0), 3))
    assert sorted(np3.root_valuations(), key=str) == sorted([inf, 0, 0, 0], key=str)


def test_newton_polygon_lengths_sum_to_degree():
    rng = random.Random(19)
    for _ in range(200):
        f = poly_from_ints([1] + [rng.randint(-100, 100) for _ in range(4)])
        np_ = lf.newton_polygon(f, rng.choice([2, 3, 5, 7]))
        assert sum(length for _, length in np_.slopes) == 4
        ss = [s for s, _ in np_.slopes]
        assert ss == sorted(ss)


def test_lift_roots_certification_and_np_match():
    rng = random.Random(23)
    checked = 0
    while checked < 40:
        coeffs = [1] + [rng.randint(-30, 30) for _ in range(4)]
        f = poly_from_ints(coeffs)
        from picard.exact import discriminant

        if discriminant(f) == 0:
            continue
        p = rng.choice([5, 7])
        try:
            e, sr = lf.split_over_minimal_tame(list(reversed(coeffs)), p)
        except lf.WildSplittingError:
            continue
        checked += 1
        np_vals = sorted(
            lf.newton_polygon(f, p).root_valuations(), key=lambda v: (v is inf, v)
        )
        got = sorted(
            (sr.root_val(i) for i in range(4)), key=lambda v: (v is inf, v)
        )
        # exact zero roots show as valuation >= cap
        fixed = [
            inf if v >= Fraction(sr.ring.cap, sr.ring.e) else v for v in got
        ]
        assert fixed == np_vals
        for i in range(4):
            fv, ball = sr.cert[i]
            assert fv >= 2 * (fv - ball) + 1  # a - 2b >= 1


def test_lift_roots_example_unit_pair():
    # f = x^4+14x^2+72x-41 mod 5 = (x+3)^2 (x^2+4x+1): two unit Hensel roots
    # and two roots congruent to -3, splitting at depth 3
    sr = lf.lift_over_ring([-41, 72, 14, 0, 1], 5, 1)
    deep = [
        (i, j)
        for i, j in itertools.combinations(range(4), 2)
        if sr.pairwise_val(i, j) > 0
    ]
    assert len(deep) == 1
    i, j = deep[0]
    assert sr.pairwise_val(i, j) == 3
    ring = sr.ring
    for t in (i, j):
        # alpha = -58 mod 5^3
        diff = ring.sub(sr.roots[t], ring.from_int(-58))
        assert ring.val(diff) >= 3


def test_lift_roots_quarter_valuation():
    e, sr = lf.split_over_minimal_tame([-5, 0, 0, 0, 1], 5)
    assert e == 4
    assert all(sr.root_val(i) == Fraction(1, 4) for i in range(4))
    assert {
        sr.pairwise_val(i, j) for i, j in itertools.combinations(range(4), 2)
    } == {Fraction(1, 4)}


def test_lift_roots_double_cluster_derived():
    # (x^2 - p)(x^2 - 2p): the pairwise-valuation oracle gives ONE cluster
    # of depth 1/2 (1 - sqrt2 is a 5-adic unit)
    p = 5
    e, sr = lf.split_over_minimal_tame([2 * p * p, 0, -3 * p, 0, 1], p)
    assert e == 2
    vals = {sr.pairwise_val(i, j) for i, j in itertools.combinations(range(4), 2)}
    assert vals == {Fraction(1, 2)}


def test_wild_detection():
    with pytest.raises(lf.WildSplittingError):
        lf.split_over_minimal_tame([-1, 0, 0, 0, 1], 2)  # Q_2(i) wild
    with pytest.raises(lf.WildSplittingError):
        lf.split_over_minimal_tame([0, -1, -24, -3, 1], 3)  # needs e = 3 at p = 3


def test_precision_env_override(monkeypatch):
    monkeypatch.setenv("PICARD_MAX_PRECISION", "123")
    assert lf.max_pi_digits() == 123
    monkeypatch.delenv("PICARD_MAX_PRECISION")
    assert lf.max_pi_digits() == 640


def test_lift_roots_public_api_hensel_units():
    from picard.localfield import TameExtension, lift_roots

    f = poly_from_ints([1, 0, 14, 72, -41])
    roots = lift_roots(f, TameExtension(5, 1), 10)
    assert len(roots) == 4
    ring = roots[0].ring
    gf = ring.U.gf
    hensel = [r for r in roots if ring.val(ring.sub(r.value, ring.from_int(-58))) < 3]
    deep = [r for r in roots if ring.val(ring.sub(r.value, ring.from_int(-58))) >= 3]
    assert len(hensel) == 2 and len(deep) == 2
    # the Hensel pair satisfies a^2 + 4a + 1 = 0 in the residue field
    four, one = gf.from_int(4), gf.one
    for r in hensel:
        a = r.expansion()[0][1]
        val = gf.add(gf.add(gf.mul(a, a), gf.mul(four, a)), one)
        assert gf.is_zero(val)
    for r in roots:
        assert r.precision >= 10


def test_lift_roots_public_api_roots_of_unity():
    from picard.localfield import TameExtension, lift_roots

    roots = lift_roots(poly_from_ints([1, 0, 0, 0, -1]), TameExtension(5, 1), 5)
    first_digits = sorted(r.expansion()[0][1][0] for r in roots)
    assert first_digits == [1, 2, 3, 4]  # 1, -1 and the square roots of -1 mod 5


def test_lift_roots_public_api_half_valuation():
    from picard.localfield import TameExtension, lift_roots

    p = 5
    f = poly_from_ints([1, 0, -3 * p, 0, 2 * p * p])
    roots = lift_roots(f, TameExtension(p, 2), 6)
    assert all(r.valuation == Fraction(1, 2) for r in roots)
    digits = [r.expansion()[0] for r in roots]
    assert all(expo == Fraction(1, 2) for expo, _ in digits)


def test_lift_roots_insufficient_extension():
    from picard.localfield import (
        InsufficientExtensionError,
        TameExtension,
        lift_roots,
    )

    with pytest.raises(InsufficientExtensionError):
        lift_roots(poly_from_ints([1, 0, 0, 0, -5]), TameExtension(5, 2), 4)


def test_cluster_tree_from_approx_roots():
    from picard.clusters import cluster_tree
    from picard.localfield import TameExtension, lift_roots

    roots = lift_roots(poly_from_ints([1, 0, 14, 72, -41]), TameExtension(5, 1), 8)
    t = cluster_tree(roots)
    assert t.component_count() == 2
    proper = [nd for nd in t.nodes if not nd.is_root]
    assert proper[0].depth == 3
