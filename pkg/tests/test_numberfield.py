from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ratsos import linalg, upoly
from ratsos.errors import DivisionByZero, FieldMismatch, NoRealEmbeddings, NotSquarefree, Reducible
from ratsos.numberfield import (
    FieldElement,
    diagonalize_trace_form,
    elem_arith,
    embedding_signs,
    make_field,
    norm,
    real_root_data,
    trace,
    trace_form_gram,
)

t = sympy.Symbol("t")

CORPUS = [
    [1, 0, 1],
    [-2, 0, 1],
    [1, -1, 0, 0, 1],
    [1, 0, 0, 0, 1],
    [-1, -4, 0, 1],
    [1, 3, 2, 1, 2, -1, 1],
    [-3, 0, 1],
    [1, 1, 1],
    [-5, 0, 1],
    [2, 0, -4, 0, 1],
    [1, -3, 0, 1],
]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def elements(K):
    return st.lists(rationals, min_size=K.degree, max_size=K.degree).map(lambda c: FieldElement(K, tuple(c)))


# --- construction ------------------------------------------------------------------

def test_gaussian_rationals():
    K = make_field([1, 0, 1])
    assert (K.degree, K.signature) == (2, 0)


def test_quartic_is_certified_mod_2(quartic):
    assert quartic.degree == 4
    assert quartic.irreducibility["method"] == "mod-p"
    assert quartic.irreducibility["patterns"][2] == (4,)
    assert quartic.discriminant == 229


def test_reducible_is_rejected():
    with pytest.raises(Reducible):
        make_field([-1, 0, 1])


def test_reducible_without_rational_roots():
    # t^4 + 4 = (t^2 + 2t + 2)(t^2 - 2t + 2)
    with pytest.raises(Reducible) as info:
        make_field([4, 0, 0, 0, 1])
    assert len(info.value.factor) == 3


def test_biquadratic_style_quartic_is_proved_irreducible():
    K = make_field([1, 0, 0, 0, 1])
    assert K.irreducibility["method"] == "root-subsets"


def test_not_squarefree():
    with pytest.raises(NotSquarefree):
        make_field([1, 2, 1])


@pytest.mark.parametrize("m", CORPUS)
def test_discriminant_matches_sympy(m):
    assert make_field(m).discriminant == sympy.discriminant(sympy.Poly(list(reversed(m)), t))


@pytest.mark.parametrize("m", CORPUS)
def test_signature_parity(m):
    K = make_field(m)
    assert 0 <= K.signature <= K.degree and (K.degree - K.signature) % 2 == 0


# --- arithmetic --------------------------------------------------------------------

def test_i_squared():
    K = make_field([1, 0, 1])
    assert K.gen * K.gen == -1


def test_quartic_reduction(quartic):
    a = quartic.gen
    assert elem_arith(a**3, a, "mul") == a - 1


def test_division_by_zero(quartic):
    with pytest.raises(DivisionByZero):
        quartic.one / quartic.zero


def test_field_mismatch(quartic, cubic):
    with pytest.raises(FieldMismatch):
        elem_arith(quartic.gen, cubic.gen, "add")


def test_level_identity(quartic):
    a = quartic.gen
    assert (a**2 + a - 1) ** 2 + (a**2 - a) ** 2 + 1 == 0


@pytest.mark.parametrize("m", [[1, -1, 0, 0, 1], [1, 3, 2, 1, 2, -1, 1], [-1, -4, 0, 1]])
def test_division_inverts_multiplication(m):
    K = make_field(m)

    @given(elements(K), elements(K))
    @settings(max_examples=30, deadline=None)
    def check(a, b):
        if b.is_zero():
            return
        assert (a / b) * b == a
        assert b / b == 1

    check()


# --- trace and norm ---------------------------------------------------------------

def test_trace_examples(quartic):
    a = quartic.gen
    assert trace(quartic.one) == 4
    assert trace(a) == 0
    assert trace(a**3) == 3


def test_norm_examples():
    K = make_field([1, 0, 1])
    assert norm(K.one) == 1
    assert norm(3 + 4 * K.gen) == 25


@pytest.mark.parametrize("m", [[1, -1, 0, 0, 1], [-1, -4, 0, 1], [1, 3, 2, 1, 2, -1, 1]])
def test_trace_norm_match_charpoly(m):
    # independent oracle: characteristic polynomial of the multiplication matrix via sympy
    K = make_field(m)

    @given(elements(K))
    @settings(max_examples=15, deadline=None)
    def check(a):
        cp = sympy.Matrix(K.mult_matrix(a)).charpoly()
        coeffs = cp.all_coeffs()
        assert trace(a) == -Fraction(str(coeffs[1]))
        assert norm(a) == Fraction(str((-1) ** K.degree * coeffs[-1]))

    check()


@pytest.mark.parametrize("m", [[1, -1, 0, 0, 1], [-1, -4, 0, 1]])
def test_norm_is_multiplicative(m):
    K = make_field(m)

    @given(elements(K), elements(K))
    @settings(max_examples=25, deadline=None)
    def check(a, b):
        assert norm(a * b) == norm(a) * norm(b)
        assert trace(a + b) == trace(a) + trace(b)

    check()


# --- trace form -------------------------------------------------------------------

def test_gram_examples():
    assert trace_form_gram(make_field([1, 0, 1])) == [[2, 0], [0, -2]]
    assert trace_form_gram(make_field([-2, 0, 1])) == [[2, 0], [0, 4]]


def test_diagonalization_examples(cubic):
    d2 = diagonalize_trace_form(make_field([-2, 0, 1]))
    assert d2.diagonal == (2, 4)
    assert d2.basis() == [1, make_field([-2, 0, 1]).gen]
    assert diagonalize_trace_form(make_field([1, 0, 1])).diagonal == (2, -2)
    assert all(x > 0 for x in diagonalize_trace_form(cubic).diagonal)


@pytest.mark.parametrize("m", CORPUS)
def test_trace_form_signature_counts_real_roots(m):
    K = make_field(m)
    diag = diagonalize_trace_form(K)
    g = trace_form_gram(K)
    b = [list(r) for r in diag.basis_change]
    prod = linalg.matmul(linalg.matmul(linalg.transpose(b), g), b)
    assert prod == [[diag.diagonal[i] if i == j else 0 for j in range(K.degree)] for i in range(K.degree)]
    assert diag.diagonal[0] == K.degree and diag.basis()[0] == 1
    pos = sum(1 for x in diag.diagonal if x > 0)
    neg = sum(1 for x in diag.diagonal if x < 0)
    assert pos - neg == len(real_root_data(m)) == K.signature


# --- real embeddings ----------------------------------------------------------------

def test_real_root_data_examples():
    assert real_root_data([1, -1, 0, 0, 1]) == []
    assert real_root_data([1, 0, 1]) == []
    intervals = real_root_data([-1, -4, 0, 1])
    for (lo, hi), x in zip(intervals, [-1.860805854, -0.2541016885, 2.114907542]):
        assert lo < x < hi or upoly.count_roots_in(upoly.sturm_sequence([-1, -4, 0, 1]), lo, hi) == 1
    with pytest.raises(NotSquarefree):
        real_root_data([1, 2, 1])


def test_embedding_signs(cubic):
    b = cubic.gen
    assert embedding_signs(b) == [-1, -1, 1]
    assert embedding_signs(cubic.one) == [1, 1, 1]
    assert embedding_signs(-b * b) == [-1, -1, -1]
    assert embedding_signs(cubic.zero) == [0, 0, 0]


def test_embedding_signs_need_real_places(quartic):
    with pytest.raises(NoRealEmbeddings):
        embedding_signs(quartic.gen)


def test_sextic_is_totally_imaginary():
    K = make_field([1, 3, 2, 1, 2, -1, 1])
    assert K.signature == 0


def test_json_round_trip(quartic):
    a = quartic.gen**2 + Fraction(1, 3)
    assert FieldElement(quartic, tuple(Fraction(c) for c in a.to_json())) == a
    assert quartic.from_json(quartic.to_json()) == quartic
