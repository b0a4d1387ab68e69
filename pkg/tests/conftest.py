import random
from fractions import Fraction

import pytest

from ratdec.field import FieldCtx, PrimeField, QuadExtField, RationalField, \
    make_field
from ratdec.poly import Poly


@pytest.fixture(scope="session")
def Q():
    return make_field("Q")


@pytest.fixture(scope="session")
def Qi():
    return make_field("Q[i]/(i^2+1)")


@pytest.fixture(scope="session")
def Qw():
    return make_field("Q[w]/(w^2+w+1)")


@pytest.fixture(scope="session")
def F4():
    return make_field("GF(2)[a]/(a^2+a+1)")


@pytest.fixture(scope="session")
def F9():
    return make_field("GF(3)[t]/(t^2+1)")


@pytest.fixture(scope="session")
def GF5():
    return make_field("GF(5)")


@pytest.fixture(scope="session")
def GF7():
    return make_field("GF(7)")


@pytest.fixture(scope="session")
def GF13():
    return make_field("GF(13)")


def random_element(F: FieldCtx, rng: random.Random):
    if isinstance(F, RationalField):
        return F.element(Fraction(rng.randint(-20, 20), rng.randint(1, 20)))
    if isinstance(F, PrimeField):
        return F.from_int(rng.randrange(F.p))
    if isinstance(F, QuadExtField):
        q = F.base.order()
        if q is None:
            c0 = Fraction(rng.randint(-10, 10), rng.randint(1, 10))
            c1 = Fraction(rng.randint(-10, 10), rng.randint(1, 10))
            return F.element((c0, c1))
        return F.element((rng.randrange(q), rng.randrange(q)))
    raise AssertionError(f"unhandled field {F}")


def random_nonzero(F, rng):
    while True:
        a = random_element(F, rng)
        if not a.is_zero():
            return a


def random_poly(F, degree, rng, monic=False):
    coeffs = [random_element(F, rng) for _ in range(degree)]
    coeffs.append(F.one if monic else random_nonzero(F, rng))
    return Poly(F, coeffs)
