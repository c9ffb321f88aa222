import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ratsos.certificate import SOSCertificate, verify_sos
from ratsos.descent import (
    DescentResult,
    descend_quadratic_module,
    descend_sos,
    euler_compose,
    euler_compose_forms,
    four_square_decompose,
    square_count_bound,
)
from ratsos.errors import InvalidInputCertificate, NonPositive, NotTotallyReal, RationalityFailure, TargetNotRational
from ratsos.numberfield import FieldElement, make_field
from ratsos.polyring import SparsePoly
from ratsos.squares import FourSquare, integer_four_squares

from conftest import poly, random_rational_sos

SQRT2 = make_field([-2, 0, 1])
SQRT5 = make_field([-5, 0, 1])


# --- four squares ----------------------------------------------------------------

@pytest.mark.parametrize("c, parts", [(7, (2, 1, 1, 1)), (Fraction(1, 2), (Fraction(1, 2), Fraction(1, 2), 0, 0))])
def test_four_square_examples(c, parts):
    assert four_square_decompose(c).parts == tuple(Fraction(p) for p in parts)


@pytest.mark.parametrize("c", [-1, 0, Fraction(-1, 3)])
def test_nonpositive_is_rejected(c):
    with pytest.raises(NonPositive):
        four_square_decompose(c)


@given(st.fractions(min_value=Fraction(1, 500), max_value=10**6, max_denominator=500))
@settings(max_examples=200, deadline=None)
def test_rational_four_squares(c):
    fs = four_square_decompose(c)
    assert sum(x * x for x in fs.parts) == c


@pytest.mark.parametrize("n", [10**6 + 1, 10**12 + 7, 2**61 - 1, 3 * 10**15 + 14])
def test_large_integers(n):
    w, x, y, z = integer_four_squares(n, random.Random(0))
    assert w * w + x * x + y * y + z * z == n


def test_euler_example():
    a = FourSquare(Fraction(7), tuple(map(Fraction, (2, 1, 1, 1))))
    b = FourSquare(Fraction(3), tuple(map(Fraction, (1, 1, 1, 0))))
    assert euler_compose(a, b).value == 21


@given(st.lists(st.integers(-20, 20), min_size=8, max_size=8))
def test_euler_is_multiplicative(xs):
    a = FourSquare(Fraction(sum(x * x for x in xs[:4])), tuple(map(Fraction, xs[:4])))
    b = FourSquare(Fraction(sum(x * x for x in xs[4:])), tuple(map(Fraction, xs[4:])))
    c = euler_compose(a, b)
    assert c.value == a.value * b.value == sum(p * p for p in c.parts)


def test_euler_forms():
    c = four_square_decompose(7)
    forms = [poly(s, 2) for s in ("x0", "x1", "x0 + x1", "0")]
    out = euler_compose_forms(c, forms)
    assert sum((q * q for q in out), SparsePoly.zero(2)) == sum((g * g for g in forms), SparsePoly.zero(2)) * 7


# --- bounds --------------------------------------------------------------------

@pytest.mark.parametrize("d, m, pk, bound", [(2, 1, 4, 5), (4, 4, 4, 16), (1, 7, 4, 7), (3, 5, 4, 21), (2, 3, 2, 8)])
def test_square_count_bound(d, m, pk, bound):
    assert square_count_bound(d, m, pk) == bound


# --- descent -------------------------------------------------------------------

def test_sqrt2_example():
    K = SQRT2
    cert = SOSCertificate(poly("2*x0^2", 1, K), ((Fraction(1), poly("a*x0", 1, K)),))
    res = descend_sos(K, cert)
    assert res.weighted.target == poly("2*x0^2", 1)
    assert res.square_count == 2 and res.bound == 5
    assert res.pure.forms == (poly("x0", 1), poly("x0", 1))
    assert res.recheck()


def test_rational_input_is_lifted():
    cert = SOSCertificate(poly("x0^2 + x1^2", 2), ((Fraction(1), poly("x0", 2)), (Fraction(1), poly("x1", 2))))
    res = descend_sos(SQRT5, cert)
    assert res.recheck() and res.square_count == 2


def test_errors(quartic):
    K = SQRT2
    with pytest.raises(NotTotallyReal):
        descend_sos(quartic, SOSCertificate(poly("x0^2", 1), ((Fraction(1), poly("x0", 1)),)))
    with pytest.raises(TargetNotRational):
        descend_sos(K, SOSCertificate(poly("(3+2*a)*x0^2", 1, K), ((Fraction(1), poly("(1+a)*x0", 1, K)),)))
    with pytest.raises(InvalidInputCertificate):
        descend_sos(K, SOSCertificate(poly("x0^2", 1, K), ((Fraction(1), poly("a*x0", 1, K)),)))


def test_descent_property_suite():
    rng = random.Random(20240601)
    for k in range(100):
        K = SQRT2 if k % 2 == 0 else SQRT5
        cert = random_rational_sos(rng, K)
        res = descend_sos(K, cert)
        m = len(cert)
        assert verify_sos(res.weighted) and verify_sos(res.pure)
        assert res.square_count <= m + 4 * (K.degree - 1) * -(-m // 4)
        assert res.recheck()


def test_descent_json_round_trip():
    K = SQRT2
    cert = SOSCertificate(poly("2*x0^2", 1, K), ((Fraction(1), poly("a*x0", 1, K)),))
    res = descend_sos(K, cert)
    back = DescentResult.from_json(json.loads(json.dumps(res.to_json())))
    assert back == res and back.recheck()


def test_quadratic_module():
    K = SQRT2
    gens = [poly("x0", 1)]
    t = SOSCertificate(poly("2*x0^2", 1, K), ((Fraction(1), poly("a*x0", 1, K)),))
    (s,) = descend_quadratic_module(K, gens, [t])
    assert s.target == poly("2*x0^2", 1)
    assert verify_sos(s)


def test_quadratic_module_two_generators():
    K = SQRT5
    t_plus = SOSCertificate(poly("(6+2*a)*x1^2", 2, K), ((Fraction(1), poly("(1+a)*x1", 2, K)),))
    t_minus = SOSCertificate(poly("(6-2*a)*x1^2", 2, K), ((Fraction(1), poly("(1-a)*x1", 2, K)),))
    with pytest.raises(RationalityFailure):
        descend_quadratic_module(K, [poly("x0", 2), poly("x1", 2)], [t_plus, t_minus])
    gens = [poly("x0", 2), poly("x0", 2)]
    ss = descend_quadratic_module(K, gens, [t_plus, t_minus])
    assert [s.target for s in ss] == [poly("6*x1^2", 2)] * 2
    assert all(verify_sos(s) for s in ss)
