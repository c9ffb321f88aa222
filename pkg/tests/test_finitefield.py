from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ratsos import finitefield

t = sympy.Symbol("t")


def sympy_pattern(a, p):
    _, factors = sympy.factor_list(sympy.Poly(list(reversed(a)), t, modulus=p))
    degs = []
    for f, mult in factors:
        degs.extend([f.degree()] * mult)
    return tuple(sorted(degs))


@pytest.mark.parametrize("n, expected", [(2, True), (1, False), (91, False), (97, True)])
def test_is_prime(n, expected):
    assert finitefield.is_prime(n) is expected


def test_primes_up_to():
    assert finitefield.primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(
    st.lists(st.integers(-9, 9), min_size=2, max_size=7),
    st.sampled_from([2, 3, 5, 7, 11, 13]),
)
@settings(max_examples=80, deadline=None)
def test_degree_pattern_matches_sympy(coeffs, p):
    a = finitefield.reduce_mod(coeffs[:-1] + [1], p)
    if not finitefield.is_squarefree(a, p):
        return
    assert finitefield.degree_pattern(a, p) == sympy_pattern(a, p)


def test_powmod_frobenius():
    # t^p = t in F_p[t]/(t^2 + 1) only when t^2+1 splits
    assert finitefield.powmod([0, 1], 5, [1, 0, 1], 5) == [0, 1]
    assert finitefield.powmod([0, 1], 3, [1, 0, 1], 3) != [0, 1]


def test_distinct_degree_split_products():
    a = finitefield.reduce_mod([1, -1, 0, 0, 1], 3)
    parts = finitefield.distinct_degree_split(a, 3)
    prod = [1]
    for _, f in parts:
        prod = finitefield.mul(prod, f, 3)
    assert finitefield.monic(prod, 3) == finitefield.monic(a, 3)
