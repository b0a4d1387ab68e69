import random
from fractions import Fraction

import pytest

from ratdec import errors
from ratdec.field import arith, characteristic, make_field
from ratdec.poly import Poly
from ratdec.roots import nth_roots_of_unity, roots_in_field
from conftest import random_element, random_nonzero, random_poly

# ---------------------------------------------------------------------------
# construction and the descriptor grammar
# ---------------------------------------------------------------------------

def test_make_field_rationals(Q):
    assert Q.kind == "rationals"
    assert characteristic(Q) == 0


def test_make_field_f4(F4):
    a = F4.generator()
    assert a * a == a + 1          # the modulus relation mod 2
    assert characteristic(F4) == 2
    assert F4.order() == 4


def test_make_field_gf4_without_modulus_rejected():
    with pytest.raises(errors.MissingModulus):
        make_field("GF(4)")


def test_make_field_nonprime():
    with pytest.raises(errors.NonPrimeModulus):
        make_field("GF(6)")
    with pytest.raises(errors.NonPrimeModulus):
        make_field("GF(1)")


def test_make_field_reducible_modulus():
    with pytest.raises(errors.ReducibleExtensionModulus):
        make_field("Q[j]/(j^2-1)")
    with pytest.raises(errors.ReducibleExtensionModulus):
        make_field("GF(5)[t]/(t^2-1)")
    with pytest.raises(errors.ReducibleExtensionModulus):
        make_field("GF(5)[t]/(t^2+1)")  # -1 is a square mod 5


def test_make_field_tower_rejected(Qi):
    from ratdec.field import QuadExtField
    with pytest.raises(errors.UnsupportedTower):
        QuadExtField(Qi, Qi.one, Qi.zero, "s")


def test_descriptor_round_trip():
    for desc in ("Q", "GF(7)", "Q[i]/(i^2+1)", "GF(2)[a]/(a^2+a+1)",
                 "GF(3)[t]/(t^2+1)", "Q[w]/(w^2+w+1)"):
        F = make_field(desc)
        assert make_field(F.descriptor()) == F


def test_bad_descriptor():
    with pytest.raises(errors.ParseError):
        make_field("R")
    with pytest.raises(errors.ParseError):
        make_field("Q[i]/(i^3+1)")
    with pytest.raises(errors.ParseError):
        make_field("Q[i]/(2*i^2+1)")


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def test_rational_arith(Q):
    a = Q.element(Fraction(2, 3))
    b = Q.element(Fraction(1, 6))
    assert a + b == Q.element(Fraction(5, 6))


def test_f4_generator_square(F4):
    a = F4.generator()
    assert arith(a, a, "mul") == a + F4.one


def test_qi_norm(Qi):
    i = Qi.generator()
    assert (Qi.one + i) * (Qi.one - i) == Qi.from_int(2)


def test_division_by_zero(Q, GF7, F4):
    for F in (Q, GF7, F4):
        with pytest.raises(errors.DivisionByZero):
            F.one / F.zero
        with pytest.raises(errors.DivisionByZero):
            arith(F.zero, None, "inv")


def test_mixed_fields_rejected(Q, GF7):
    with pytest.raises(errors.MixedFields):
        Q.one + GF7.one


def test_arith_dispatcher(GF7):
    a, b = GF7.from_int(3), GF7.from_int(5)
    assert arith(a, b, "add") == GF7.from_int(1)
    assert arith(a, b, "sub") == GF7.from_int(5)
    assert arith(a, b, "mul") == GF7.from_int(1)
    assert arith(a, b, "div") == GF7.from_int(2)
    assert arith(a, None, "neg") == GF7.from_int(4)
    assert arith(a, b, "eq") is False


def test_characteristic_values(Q, Qi, GF7, F4):
    assert characteristic(Qi) == 0
    assert characteristic(GF7) == 7
    assert characteristic(F4) == 2
    for F in (Q, Qi, GF7, F4):
        c = characteristic(F)
        assert c == 0 or all(c % d for d in range(2, c))


def test_field_axioms_random(Q, Qi, GF7, F4, F9):
    rng = random.Random(20240811)
    for F in (Q, Qi, GF7, F4, F9):
        for _ in range(1000):
            a = random_element(F, rng)
            b = random_element(F, rng)
            c = random_element(F, rng)
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert a * a.inverse() == F.one


def test_frobenius_in_characteristic_p(GF7, F4, F9):
    rng = random.Random(7)
    for F in (GF7, F4, F9):
        p = F.characteristic()
        for _ in range(100):
            a = random_element(F, rng)
            b = random_element(F, rng)
            assert (a + b) ** p == a ** p + b ** p


def test_canonical_text(Q, Qi):
    assert str(Q.element(Fraction(5, 6))) == "5/6"
    assert str(Q.element(Fraction(-1, 2))) == "-1/2"
    i = Qi.generator()
    assert str(Qi.one + Qi.from_int(2) * i) == "1 + 2*i"
    assert str(-i) == "-i"
    assert str(Qi.zero) == "0"


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------

def test_roots_x2_plus_1_over_q(Q):
    p = Poly(Q, [1, 0, 1])
    assert roots_in_field(p) == set()


def test_roots_x2_plus_1_over_qi(Qi):
    p = Poly(Qi, [1, 0, 1])
    i = Qi.generator()
    assert roots_in_field(p) == {i, -i}


def test_roots_x3_minus_1_over_gf7(GF7):
    p = Poly(GF7, [-1, 0, 0, 1])
    # brute-force oracle over all residues, through the generic evaluator
    expected = {a for a in GF7.elements() if p.eval(a).is_zero()}
    assert expected == {GF7.from_int(1), GF7.from_int(2), GF7.from_int(4)}
    assert roots_in_field(p) == expected


def test_roots_match_exhaustive_scan_random(GF7, GF13, F4, F9):
    rng = random.Random(99)
    for F in (GF7, GF13, F4, F9):
        for _ in range(25):
            p = random_poly(F, rng.randint(1, 6), rng)
            slow = {a for a in F.elements() if p.eval(a).is_zero()}
            assert roots_in_field(p) == slow


def test_roots_planted_rational(Q):
    # (x - 2)(x + 3/5)(x^2 + 1): the planted roots are the oracle
    x = Poly.x(Q)
    p = (x - Poly(Q, [2])) * (x + Poly(Q, [Q.element(Fraction(3, 5))])) \
        * (x * x + Poly.one(Q))
    assert roots_in_field(p) == {Q.from_int(2), Q.element(Fraction(-3, 5))}


def test_roots_planted_quadext(Qi):
    i = Qi.generator()
    x = Poly.x(Qi)
    rho = Qi.element((Fraction(1, 2), Fraction(3)))  # 1/2 + 3i
    p = (x - Poly.constant(rho)) * (x + Poly.constant(i)) \
        * (x * x + Poly(Qi, [3]))
    assert roots_in_field(p) == {rho, -i}


def test_roots_repeated_factors_quadext(Qi):
    i = Qi.generator()
    x = Poly.x(Qi)
    p = (x - Poly.constant(i)) ** 3 * (x - Poly.one(Qi)) ** 2
    assert roots_in_field(p) == {i, Qi.one}


def test_roots_zero_poly_rejected(Q):
    with pytest.raises(errors.ZeroInput):
        roots_in_field(Poly.zero(Q))


def test_roots_field_too_large():
    F = make_field("GF(65537)")
    with pytest.raises(errors.FieldTooLarge):
        roots_in_field(Poly(F, [1, 0, 1]))


def test_roots_verified_by_evaluation(Q, Qi, GF7):
    rng = random.Random(5)
    for F in (Q, Qi, GF7):
        for _ in range(10):
            p = random_poly(F, rng.randint(1, 5), rng)
            for r in roots_in_field(p):
                assert p.eval(r).is_zero()


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------

def test_roots_of_unity_q(Q):
    assert nth_roots_of_unity(Q, 4) == {Q.one, -Q.one}


def test_roots_of_unity_qi(Qi):
    i = Qi.generator()
    assert nth_roots_of_unity(Qi, 4) == {Qi.one, -Qi.one, i, -i}


def test_roots_of_unity_gf7(GF7):
    # exhaustive oracle: 2^3 = 8 = 1, 4^3 = 64 = 1 mod 7
    assert pow(2, 3, 7) == 1 and pow(4, 3, 7) == 1
    assert nth_roots_of_unity(GF7, 3) == {GF7.from_int(1), GF7.from_int(2),
                                          GF7.from_int(4)}


def test_roots_of_unity_group_structure(Q, Qi, GF7, GF13, F9):
    rng = random.Random(3)
    for F in (Q, Qi, GF7, GF13, F9):
        for n in (1, 2, 3, 4, 5, 6, 8, 12):
            mu = nth_roots_of_unity(F, n)
            assert F.one in mu
            assert n % len(mu) == 0          # order divides n
            for a in mu:                      # closed under multiplication
                for b in mu:
                    assert a * b in mu
