import pytest
from hypothesis import given, settings, strategies as st

from oracles import sympy_reduced_gb
from schubpatch.groebner import (
    MonomialIdeal,
    PairLimitExceeded,
    buchberger,
    groebner_basis,
    ideal_contains,
    ideal_equal,
    initial_ideal,
    is_groebner,
    is_homogeneous,
    normal_form,
)
from schubpatch.polyalg import GradingMap, Polynomial, TermOrder, Var, mono

X = [Var(1, j, "x") for j in range(1, 5)]
ORDER = TermOrder(X)
x1, x2, x3, x4 = (Polynomial.var(v) for v in X)

monos = st.lists(st.tuples(st.sampled_from(X), st.integers(1, 2)), min_size=0, max_size=2).map(lambda ps: mono(*ps))
polys = st.dictionaries(monos, st.integers(-3, 3), min_size=1, max_size=3).map(Polynomial)


def test_twisted_cubic():
    gens = [x1 * x3 - x2 * x2, x2 * x4 - x3 * x3, x1 * x4 - x2 * x3]
    gb = buchberger(gens, ORDER)
    assert set(gb.elements) == sympy_reduced_gb(gens, ORDER)
    assert is_groebner(gb.elements, ORDER).certified


def test_is_groebner_reports_failures():
    gens = [x1 * x2 - x3, x1 * x3 - x4]
    r = is_groebner(gens, ORDER)
    assert not r.certified and r.failures
    assert r.n_spairs == 1 and r.n_skipped == 0


def test_product_criterion_counts_skips():
    r = is_groebner([x1 * x1 + x4, x2 * x3], ORDER)
    assert r.certified and r.n_skipped == 1


def test_pair_limit():
    gens = [x1 + x2, x1 + x3, x1 + x4]
    with pytest.raises(PairLimitExceeded):
        is_groebner(gens, ORDER, pair_limit=1)


def test_unit_ideal():
    gb = buchberger([x1, x1 + 1], ORDER)
    assert gb.is_unit() and gb.elements == [Polynomial.const(1)]


def test_normal_form_and_membership():
    gens = [x1 - x2, x2 - x3]
    assert normal_form(x1, gens, ORDER) == x3
    assert ideal_contains(x1 - x3, gens, ORDER)
    assert not ideal_contains(x1 - x4, gens, ORDER)
    assert ideal_contains([x1 - x3, x1 - x2], gens, ORDER)


def test_ideal_equal_ignores_presentation():
    assert ideal_equal([x1 - x2, x2 - x3], [x1 - x3, x1 - x2], ORDER)
    assert not ideal_equal([x1], [x1 * x1], ORDER)


def test_initial_ideal_requires_certificate():
    gb = groebner_basis([x1 * x3 - x2 * x2], ORDER)
    assert initial_ideal(gb) == MonomialIdeal([mono(X[0], X[2])])
    gb.certified = False
    with pytest.raises(ValueError):
        initial_ideal(gb)


def test_homogeneity_uses_ideal_not_presentation():
    std = GradingMap.standard(X)
    # inhomogeneous generators of a homogeneous ideal
    assert is_homogeneous([x1, x1 + x2 * x3], std, ORDER)
    assert not is_homogeneous([x1 + x2 * x3], std, ORDER)


def test_monomial_ideal_ops():
    a = MonomialIdeal([mono(X[0], X[1]), mono(X[0]), mono(X[2], X[3])])
    assert a.minimal_generators == {mono(X[0]), mono(X[2], X[3])}
    assert a.contains(mono(X[0], X[3])) and not a.contains(mono(X[2]))
    assert a.colon_var(X[2]) == MonomialIdeal([mono(X[0]), mono(X[3])])
    assert a.is_squarefree() and not MonomialIdeal([mono((X[0], 2))]).is_squarefree()
    assert MonomialIdeal([()]).is_unit()


@settings(max_examples=40, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3))
def test_buchberger_matches_sympy(gens):
    gb = buchberger(gens, ORDER)
    assert set(gb.elements) == sympy_reduced_gb(gens, ORDER)


@settings(max_examples=40, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3), polys)
def test_reduced_basis_is_certified_and_generates(gens, f):
    gb = buchberger(gens, ORDER)
    assert is_groebner(gb.elements, ORDER).certified
    for g in gens:
        assert gb.contains(g)
    # f*g is in the ideal for any generator g
    assert gb.contains(f * gens[0])
