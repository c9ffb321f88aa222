import json
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ratsos.counterexample import (
    EvidenceBundle,
    build_norm_form,
    certify_not_sos,
    check_search_properties,
    condition_star_check,
    factor_degree_pattern,
    general_position_check,
    is_two_transitive,
    monomials,
    pair_orbits,
    search_field,
    search_level2_field,
    two_transitivity_evidence,
    vanishing_dimension,
)
from ratsos.errors import (
    BudgetExhausted,
    DegreeTooSmall,
    GeneralPositionUnverified,
    NotInvolution,
    OddDegree,
    RamifiedPrime,
    TauHasFixedPoint,
    TooFewVariables,
)
from ratsos.numberfield import make_field
from ratsos.polyring import SparsePoly, vandermonde_form

from conftest import QUARTIC_FORM, poly
from oracles import is_squarefree_mod_p, trial_division_pattern

CUBE_GENS = [(0, 1, 5, 4, 2, 3), (5, 4, 2, 3, 0, 1)]
CUBE_TAU = (2, 3, 0, 1, 5, 4)
S4_GENS = [(1, 2, 3, 0), (1, 0, 2, 3)]


# --- factor patterns ----------------------------------------------------------------

@pytest.mark.parametrize("p, degrees", [(2, (4,)), (3, (1, 3)), (5, (1, 3)), (7, (4,))])  # mod 5, 7 frozen from sympy factor_list
def test_quartic_patterns(p, degrees):
    assert factor_degree_pattern([1, -1, 0, 0, 1], p).degrees == degrees


def test_ramified_prime():
    with pytest.raises(RamifiedPrime):
        factor_degree_pattern([1, -1, 0, 0, 1], 229)
    with pytest.raises(ValueError):
        factor_degree_pattern([1, -1, 0, 0, 1], 4)


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=5), st.sampled_from([2, 3, 5, 7, 11]))
@settings(max_examples=150, deadline=None)
def test_patterns_match_trial_division(low, p):
    m = low + [1]
    if not is_squarefree_mod_p(m, p):
        with pytest.raises(RamifiedPrime):
            factor_degree_pattern(m, p)
        return
    assert list(factor_degree_pattern(m, p).degrees) == trial_division_pattern(m, p)


def test_trial_division_oracle_agrees_with_sympy():
    t = sympy.Symbol("t")
    for low in product(range(-1, 2), repeat=3):
        m = list(low) + [1]
        for p in (2, 3, 5):
            if not is_squarefree_mod_p(m, p):
                continue
            facs = sympy.factor_list(sympy.Poly(list(reversed(m)), t, modulus=p))[1]
            assert sorted(f.degree() for f, k in facs for _ in range(k)) == trial_division_pattern(m, p)


# --- transitivity -------------------------------------------------------------------

def test_quartic_is_two_transitive(quartic):
    tr = two_transitivity_evidence(quartic)
    assert (tr.kind, tr.p, tr.q) == ("TwoTransitive", 2, 3)


def test_cyclotomic_quartic_is_unverified():
    tr = two_transitivity_evidence(make_field([1, 0, 0, 0, 1]))
    assert not tr.verified


def test_cube_rotation_action():
    assert condition_star_check(CUBE_GENS, CUBE_TAU)
    assert len(pair_orbits(CUBE_GENS)) == 2
    assert not is_two_transitive(CUBE_GENS)


def test_symmetric_group_on_four():
    assert is_two_transitive(S4_GENS)
    assert len(pair_orbits(S4_GENS)) == 1
    assert condition_star_check(S4_GENS, (1, 0, 3, 2))
    # 1-based input is accepted
    assert condition_star_check([[2, 3, 4, 1], [2, 1, 3, 4]], [2, 1, 4, 3])


def test_cyclic_group_fails_condition_star():
    # C4 on 4 points: pairs {0,2},{1,3} form their own orbit
    assert not condition_star_check([(1, 2, 3, 0)], (1, 0, 3, 2))
    assert condition_star_check([(1, 2, 3, 0)], (2, 3, 0, 1)) is False


def test_condition_star_errors():
    with pytest.raises(NotInvolution):
        condition_star_check(S4_GENS, (1, 2, 3, 0))
    with pytest.raises(TauHasFixedPoint):
        condition_star_check(S4_GENS, (0, 1, 3, 2))


@pytest.mark.parametrize("gens", [CUBE_GENS, S4_GENS, [(1, 2, 3, 0)]])
def test_pair_orbits_match_sympy_group(gens):
    from itertools import combinations

    from sympy.combinatorics import Permutation, PermutationGroup

    G = list(PermutationGroup([Permutation(list(g)) for g in gens]).elements)
    n = len(gens[0])
    oracle = {frozenset(frozenset((g(x), g(y))) for g in G) for x, y in combinations(range(n), 2)}
    assert {frozenset(o) for o in pair_orbits(gens)} == oracle


# --- norm forms and general position ---------------------------------------------------

def test_build_norm_form(quartic, vandermonde_l, quartic_form):
    assert build_norm_form(quartic, vandermonde_l) == quartic_form
    assert len(quartic_form.terms) == 9


def test_build_norm_form_errors(quartic, cubic):
    with pytest.raises(OddDegree):
        build_norm_form(cubic, vandermonde_form(cubic, 3))
    with pytest.raises(DegreeTooSmall):
        K = make_field([1, 0, 1])
        build_norm_form(K, vandermonde_form(K, 3))
    with pytest.raises(TooFewVariables):
        build_norm_form(quartic, vandermonde_form(quartic, 2))


def test_general_position(quartic, vandermonde_l):
    assert general_position_check(quartic, vandermonde_l).method == "Vandermonde"
    gp = general_position_check(quartic, poly("x0 + a*x1 + a*x2", 3, quartic))
    assert (gp.result, gp.method) == (False, "Exact")
    gp = general_position_check(quartic, poly("x0 + a*x1 + a^2*x2 + a^3*x3", 4, quartic))
    assert gp.result
    gp = general_position_check(quartic, poly("x0 + (a+1)*x1 + (a^3 - 2)*x2", 3, quartic))
    assert (gp.result, gp.method) == (True, "Interval")


def test_vandermonde_minors_numerically(quartic, vandermonde_l):
    # oracle: the 3x3 minors of the conjugate coefficient matrix are nonzero
    t = sympy.Symbol("t")
    roots = sympy.Poly(t**4 - t + 1, t).nroots(n=30)
    from itertools import combinations

    for rows in combinations(roots, 3):
        M = sympy.Matrix([[1, r, r**2] for r in rows])
        assert abs(M.det()) > 1e-6


# --- vanishing dimensions ---------------------------------------------------------------

def test_monomials():
    assert len(monomials(3, 2)) == 6
    assert len(monomials(3, 3)) == 10


@pytest.mark.parametrize("D, dim", [(1, 0), (2, 0), (3, 4)])
def test_quartic_vanishing_dims(quartic, vandermonde_l, D, dim):
    assert vanishing_dimension(quartic, vandermonde_l, D) == dim


def test_degree_three_space_is_spanned_by_traces(quartic, vandermonde_l, quartic_form):
    # the d traces tr(y f/l) are independent rational cubics vanishing on all intersections
    from ratsos.denominator import trace_quotient_form
    from ratsos import linalg

    a = quartic.gen
    gs = [trace_quotient_form(quartic, vandermonde_l, a**k) for k in range(4)]
    basis = monomials(3, 3)
    assert linalg.rank([[g.coeff(e) for e in basis] for g in gs]) == 4


def test_vanishing_needs_general_position(quartic):
    l = poly("x0 + a*x1 + a*x2", 3, quartic)
    with pytest.raises(GeneralPositionUnverified):
        vanishing_dimension(quartic, l, 2)


# --- evidence bundles -------------------------------------------------------------------

def test_quartic_evidence(quartic, vandermonde_l):
    ev = certify_not_sos(quartic, vandermonde_l)
    assert ev.conclusion == "NotSOSOverQ"
    assert ev.totally_imaginary and ev.general_position.method == "Vandermonde"
    assert dict(ev.vanishing_dims) == {1: 0, 2: 0, 3: 4}
    back = EvidenceBundle.from_json(json.loads(json.dumps(ev.to_json())))
    assert back.to_json() == ev.to_json()


def test_inconclusive_without_transitivity():
    K = make_field([1, 0, 0, 0, 1])
    ev = certify_not_sos(K, vandermonde_form(K, 3))
    assert ev.conclusion == "Inconclusive"


def test_group_data_requires_correspondence():
    K = make_field([1, 0, 0, 0, 1])
    ev = certify_not_sos(K, vandermonde_form(K, 3), group_data={"generators": S4_GENS, "tau": (1, 0, 3, 2)})
    assert ev.conclusion == "Inconclusive" and ev.notes


def test_real_field_is_inconclusive():
    K = make_field([2, 0, -4, 0, 1])
    ev = certify_not_sos(K, vandermonde_form(K, 3))
    assert not ev.totally_imaginary and ev.conclusion == "Inconclusive"


def test_forged_bundle_is_rejected(quartic, vandermonde_l):
    ev = certify_not_sos(make_field([1, 0, 0, 0, 1]), vandermonde_form(make_field([1, 0, 0, 0, 1]), 3))
    data = ev.to_json()
    data["conclusion"] = "NotSOSOverQ"
    with pytest.raises(AssertionError):
        EvidenceBundle.from_json(data)


# --- search ----------------------------------------------------------------------------

def test_sextic_example_has_no_real_roots():
    assert make_field([1, 3, 2, 1, 2, -1, 1]).signature == 0


def test_search_properties(quartic):
    assert check_search_properties([1, -1, 0, 0, 1], []) == (2, 3)
    assert check_search_properties([1, -1, 0, 0, 1], [229]) is None
    assert check_search_properties([2, 0, -4, 0, 1], []) is None  # real roots


def test_search_field_is_deterministic():
    K = search_field(4, {2, 3, 5}, seed=1)
    assert K.minpoly == search_field(4, {2, 3, 5}, seed=1).minpoly
    disc = K.discriminant
    assert all(disc % p for p in (2, 3, 5))
    assert K.signature == 0
    assert check_search_properties(K.minpoly, [2, 3, 5]) is not None


def test_search_field_errors():
    with pytest.raises(DegreeTooSmall):
        search_field(5)
    with pytest.raises(BudgetExhausted):
        search_field(4, budget=0)


def test_level2_search():
    found = search_level2_field(4, seed=3)
    one, A, B = found.witness
    assert one * one + A * A + B * B == 0
    assert check_search_properties(found.field.minpoly, []) is not None
